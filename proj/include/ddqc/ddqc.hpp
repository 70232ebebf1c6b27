#pragma once

#include "ddqc/baselines.hpp"
#include "ddqc/degree_distribution.hpp"
#include "ddqc/error.hpp"
#include "ddqc/evaluation.hpp"
#include "ddqc/generators.hpp"
#include "ddqc/graph.hpp"
#include "ddqc/manifest.hpp"
#include "ddqc/quantification.hpp"
#include "ddqc/report.hpp"
#include "ddqc/serialization.hpp"
