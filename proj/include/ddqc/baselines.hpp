#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "ddqc/degree_distribution.hpp"
#include "ddqc/error.hpp"
#include "ddqc/quantification.hpp"

namespace ddqc {

// Two-sample Kolmogorov-Smirnov statistic between degree CDFs. The degree
// axis is compared as-is, without rescaling.
inline double ks_distance(const DegreeDistribution& a, const DegreeDistribution& b) {
  // The difference of two right-continuous step functions is constant
  // between jump points, so the union of supports suffices.
  const auto& sa = a.support();
  const auto& sb = b.support();
  double best = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() || j < sb.size()) {
    std::size_t d;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
      d = sa[i];
    } else {
      d = sb[j];
    }
    while (i < sa.size() && sa[i] == d) ++i;
    while (j < sb.size() && sb[j] == d) ++j;
    const auto at = static_cast<std::int64_t>(d);
    best = std::max(best, std::abs(a.cdf(at) - b.cdf(at)));
  }
  return best;
}

/**
 * Discrete power-law exponent by the approximate maximum-likelihood
 * estimator 1 + n / sum(ln(d / (d_min - 1/2))), with d_min fixed at the
 * smallest positive degree. Degree-0 nodes are ignored.
 *
 * Needs at least two distinct positive degrees; throws FitError otherwise.
 */
inline double powerlaw_exponent(const DegreeDistribution& dd) {
  const auto& support = dd.support();
  const auto& counts = dd.counts();
  const auto first = std::upper_bound(support.begin(), support.end(), std::size_t{0}) - support.begin();
  const auto distinct = support.size() - static_cast<std::size_t>(first);
  if (distinct < 2) throw FitError("power-law fit needs at least two distinct positive degrees");

  const double shifted_min = static_cast<double>(support[first]) - 0.5;
  double log_sum = 0.0;
  std::size_t n = 0;
  for (auto i = static_cast<std::size_t>(first); i < support.size(); ++i) {
    log_sum += static_cast<double>(counts[i]) * std::log(static_cast<double>(support[i]) / shifted_min);
    n += counts[i];
  }
  return 1.0 + static_cast<double>(n) / log_sum;
}

inline double powerlaw_distance(const DegreeDistribution& a, const DegreeDistribution& b) {
  return std::abs(powerlaw_exponent(a) - powerlaw_exponent(b));
}

/// Mass in eight equal-width bins over [min, max]; bins are half-open except
/// the last. A single-valued distribution puts everything in the last bin.
struct PercentileVector {
  std::array<double, 8> bins{};

  friend bool operator==(const PercentileVector&, const PercentileVector&) = default;
};

inline PercentileVector percentiles_quantify(const DegreeDistribution& dd) {
  PercentileVector out;
  const auto lo = static_cast<double>(dd.min_degree());
  const auto hi = static_cast<double>(dd.max_degree());
  if (dd.min_degree() == dd.max_degree()) {
    out.bins.back() = 1.0;
    return out;
  }
  const double width = (hi - lo) / 8.0;
  for (std::size_t k = 0; k < 8; ++k) {
    const double left = lo + static_cast<double>(k) * width;
    const double right = k == 7 ? hi : lo + static_cast<double>(k + 1) * width;
    out.bins[k] = idp(dd, left, right, k == 7);
  }
  return out;
}

// Manhattan distance.
inline double percentiles_distance(const PercentileVector& a, const PercentileVector& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < 8; ++k) sum += std::abs(a.bins[k] - b.bins[k]);
  return sum;
}

inline double percentiles_distance(const DegreeDistribution& a, const DegreeDistribution& b) {
  return percentiles_distance(percentiles_quantify(a), percentiles_quantify(b));
}

}  // namespace ddqc
