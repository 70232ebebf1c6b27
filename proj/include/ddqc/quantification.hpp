#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ddqc/degree_distribution.hpp"
#include "ddqc/error.hpp"

namespace ddqc {

/**
 * Configuration of the quantification and of the distance.
 *
 * alpha scales the width of the two middle regions (mean -/+ alpha*std),
 * beta sets the split factor L = 2^beta of each region, gamma discounts
 * the finer levels in the distance.
 */
struct QuantizationParams {
  double alpha = 1.0;
  int beta = 3;
  double gamma = 0.8;

  std::size_t split_factor() const { return std::size_t{1} << beta; }

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be > 0");
    if (beta < 0 || beta > 20) throw ParameterError("beta must be in [0, 20]");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be > 0");
  }
};

/// Region points, region lengths and interval borders of one distribution.
struct IntervalGrid {
  std::array<double, 5> region_points{};
  // upper - lower per region, before clamping; negative marks a region
  // whose intervals carry no probability.
  std::array<double, 4> raw_lengths{};
  std::array<double, 4> region_lengths{};
  std::size_t split = 1;
  std::vector<double> interval_points;  // 4 * split + 1 borders

  std::size_t interval_count() const { return 4 * split; }
  std::size_t region_of(std::size_t interval) const { return interval / split; }
};

/// Fixed-length feature vector of interval degree probabilities.
struct QuantifiedDistribution {
  double alpha = 1.0;
  int beta = 0;
  std::vector<double> idp;

  friend bool operator==(const QuantifiedDistribution&, const QuantifiedDistribution&) = default;
};

/// [min, mean - alpha*std, mean, mean + alpha*std, max]; inner points are
/// not clamped to the degree range.
inline std::array<double, 5> region_bounds(const DegreeDistribution& dd, double alpha) {
  const double mu = dd.mean();
  const double spread = alpha * dd.stddev();
  return {static_cast<double>(dd.min_degree()), mu - spread, mu, mu + spread,
          static_cast<double>(dd.max_degree())};
}

inline IntervalGrid interval_grid(const DegreeDistribution& dd, double alpha, std::size_t split) {
  if (split == 0) throw ParameterError("split factor must be >= 1");
  IntervalGrid grid;
  grid.region_points = region_bounds(dd, alpha);
  grid.split = split;
  for (std::size_t r = 0; r < 4; ++r) {
    grid.raw_lengths[r] = grid.region_points[r + 1] - grid.region_points[r];
    grid.region_lengths[r] = std::max(grid.raw_lengths[r], 0.0);
  }
  // Every region restarts from its own (unclamped) lower point, so the
  // sequence may step backwards after a clamped region.
  grid.interval_points.reserve(4 * split + 1);
  const auto L = static_cast<double>(split);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t j = 0; j < split; ++j) {
      grid.interval_points.push_back(grid.region_points[r] +
                                     static_cast<double>(j) * grid.region_lengths[r] / L);
    }
  }
  // mean + alpha*std + |region 4|, which is max exactly unless region 4 is clamped.
  grid.interval_points.push_back(grid.raw_lengths[3] >= 0.0 ? grid.region_points[4] : grid.region_points[3]);
  return grid;
}

inline std::vector<double> interval_points(const DegreeDistribution& dd, double alpha, std::size_t split) {
  return interval_grid(dd, alpha, split).interval_points;
}

/// Probability of lo <= degree < hi, or lo <= degree <= hi when closed_right.
/// Zero for reversed or empty intervals.
inline double idp(const DegreeDistribution& dd, double lo, double hi, bool closed_right) {
  if (hi < lo) return 0.0;
  const auto& support = dd.support();
  const auto first = std::partition_point(support.begin(), support.end(),
                                          [lo](auto d) { return static_cast<double>(d) < lo; });
  const auto last =
      closed_right
          ? std::partition_point(first, support.end(), [hi](auto d) { return static_cast<double>(d) <= hi; })
          : std::partition_point(first, support.end(), [hi](auto d) { return static_cast<double>(d) < hi; });
  if (first == last) return 0.0;
  const auto& counts = dd.counts();
  std::size_t mass = 0;
  for (auto i = first - support.begin(); i < last - support.begin(); ++i) mass += counts[i];
  return static_cast<double>(mass) / static_cast<double>(dd.n_nodes());
}

inline QuantifiedDistribution quantify(const DegreeDistribution& dd, const QuantizationParams& params = {}) {
  params.validate();
  const auto grid = interval_grid(dd, params.alpha, params.split_factor());
  QuantifiedDistribution q{params.alpha, params.beta, {}};
  const std::size_t count = grid.interval_count();
  q.idp.resize(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    if (grid.raw_lengths[grid.region_of(i)] < 0.0) continue;
    q.idp[i] = idp(dd, grid.interval_points[i], grid.interval_points[i + 1], i + 1 == count);
  }
  return q;
}

/// Halves the resolution: entry i becomes the sum of entries 2i and 2i+1.
inline QuantifiedDistribution coarsen(const QuantifiedDistribution& q) {
  if (q.beta < 1) throw DomainError("cannot coarsen a beta = 0 quantification");
  if (q.idp.size() != 4 * (std::size_t{1} << q.beta)) {
    throw ParameterError("quantification length does not match beta");
  }
  QuantifiedDistribution out{q.alpha, q.beta - 1, std::vector<double>(q.idp.size() / 2)};
  for (std::size_t i = 0; i < out.idp.size(); ++i) out.idp[i] = q.idp[2 * i] + q.idp[2 * i + 1];
  return out;
}

/// All resolutions of a quantification, coarsest (level 0) first.
inline std::vector<std::vector<double>> quantification_levels(const QuantifiedDistribution& q) {
  std::vector<std::vector<double>> levels(static_cast<std::size_t>(q.beta) + 1);
  QuantifiedDistribution current = q;
  levels.back() = current.idp;
  for (int s = q.beta - 1; s >= 0; --s) {
    current = coarsen(current);
    levels[static_cast<std::size_t>(s)] = current.idp;
  }
  return levels;
}

/// Discounted multi-level L1 distance between two precomputed level stacks.
inline double ddqc_distance_levels(const std::vector<std::vector<double>>& a,
                                   const std::vector<std::vector<double>>& b, double gamma) {
  if (a.size() != b.size()) throw ParameterError("quantifications differ in beta");
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].size() != b[s].size()) throw ParameterError("quantification level size mismatch");
    double level_sum = 0.0;
    for (std::size_t i = 0; i < a[s].size(); ++i) level_sum += std::abs(a[s][i] - b[s][i]);
    total += weight * level_sum;
    weight *= gamma;
  }
  return total;
}

inline double ddqc_distance(const QuantifiedDistribution& q1, const QuantifiedDistribution& q2, double gamma) {
  if (q1.beta != q2.beta) throw ParameterError("quantifications differ in beta");
  if (q1.alpha != q2.alpha) throw ParameterError("quantifications differ in alpha");
  if (!(gamma > 0.0)) throw ParameterError("gamma must be > 0");
  return ddqc_distance_levels(quantification_levels(q1), quantification_levels(q2), gamma);
}

inline double ddqc_distance(const DegreeDistribution& a, const DegreeDistribution& b,
                            const QuantizationParams& params = {}) {
  return ddqc_distance(quantify(a, params), quantify(b, params), params.gamma);
}

}  // namespace ddqc
