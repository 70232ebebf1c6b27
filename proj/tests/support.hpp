#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ddqc/degree_distribution.hpp"
#include "ddqc/graph.hpp"

namespace testing_support {

using Seq = std::vector<std::size_t>;

inline ddqc::DegreeDistribution dist(const Seq& seq) { return ddqc::DegreeDistribution::from_degree_sequence(seq); }

inline Seq triangle() { return {2, 2, 2}; }
inline Seq k4() { return {3, 3, 3, 3}; }
inline Seq star4() { return {4, 1, 1, 1, 1}; }

inline ddqc::Graph complete_graph(std::size_t n) {
  std::vector<ddqc::Edge> edges;
  for (ddqc::NodeId u = 0; u < n; ++u)
    for (ddqc::NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  return ddqc::Graph(n, edges);
}

inline ddqc::Graph star_graph(std::size_t leaves) {
  std::vector<ddqc::Edge> edges;
  for (ddqc::NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return ddqc::Graph(leaves + 1, edges);
}

// Mixed shapes: narrow, wide, heavy-tailed and single-valued sequences.
inline Seq random_sequence(std::mt19937_64& rng, std::size_t max_len = 2000, std::size_t max_degree = 500) {
  const auto len = std::uniform_int_distribution<std::size_t>(1, max_len)(rng);
  const int shape = std::uniform_int_distribution<int>(0, 3)(rng);
  Seq seq(len);
  if (shape == 0) {
    const auto top = std::uniform_int_distribution<std::size_t>(0, max_degree)(rng);
    for (auto& d : seq) d = std::uniform_int_distribution<std::size_t>(0, top)(rng);
  } else if (shape == 1) {
    const auto centre = std::uniform_int_distribution<std::size_t>(0, max_degree)(rng);
    std::binomial_distribution<std::size_t> spread(20, 0.5);
    for (auto& d : seq) d = std::min(max_degree, centre + spread(rng));
  } else if (shape == 2) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& d : seq)
      d = std::min<std::size_t>(max_degree, static_cast<std::size_t>(std::pow(1.0 - u(rng), -1.0 / 1.5)));
  } else {
    std::fill(seq.begin(), seq.end(), std::uniform_int_distribution<std::size_t>(0, max_degree)(rng));
  }
  return seq;
}

}  // namespace testing_support
