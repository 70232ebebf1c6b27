#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddqc/error.hpp"
#include "ddqc/graph.hpp"

namespace ddqc {

/**
 * Probability mass function over node degrees, with summary statistics.
 *
 * Probabilities are multiplicity / n. The mean and the population standard
 * deviation are evaluated from exact integer sums (sum of degrees and sum of
 * squared deviations scaled by n^2), so that distributions whose degrees
 * differ by a common integer factor produce exactly proportional statistics
 * whenever those statistics are representable.
 */
class DegreeDistribution {
 public:
  using Degree = std::size_t;

  static DegreeDistribution from_degree_sequence(std::span<const Degree> seq) {
    if (seq.empty()) throw DomainError("degree sequence is empty");
    std::vector<Degree> sorted(seq.begin(), seq.end());
    std::sort(sorted.begin(), sorted.end());

    DegreeDistribution dd;
    dd.n_nodes_ = sorted.size();
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      dd.support_.push_back(sorted[i]);
      dd.counts_.push_back(j - i);
      i = j;
    }

    const auto n = static_cast<double>(dd.n_nodes_);
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    std::size_t cumulative = 0;
    for (std::size_t i = 0; i < dd.support_.size(); ++i) {
      const unsigned __int128 d = dd.support_[i];
      const unsigned __int128 c = dd.counts_[i];
      sum += c * d;
      sum_sq += c * d * d;
      cumulative += dd.counts_[i];
      dd.probs_.push_back(static_cast<double>(dd.counts_[i]) / n);
      dd.cumulative_.push_back(static_cast<double>(cumulative) / n);
    }
    // n * sum(d^2) - (sum d)^2 = n^2 * variance; never negative in exact arithmetic.
    const unsigned __int128 scaled_var = static_cast<unsigned __int128>(dd.n_nodes_) * sum_sq - sum * sum;
    dd.mean_ = static_cast<double>(sum) / n;
    dd.std_ = std::sqrt(static_cast<double>(scaled_var)) / n;
    return dd;
  }

  static DegreeDistribution from_graph(const Graph& g) {
    const auto seq = degree_sequence(g);
    return from_degree_sequence(seq);
  }

  const std::vector<Degree>& support() const noexcept { return support_; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }

  Degree min_degree() const noexcept { return support_.front(); }
  Degree max_degree() const noexcept { return support_.back(); }
  double mean() const noexcept { return mean_; }
  double stddev() const noexcept { return std_; }
  std::size_t n_nodes() const noexcept { return n_nodes_; }

  /// P(degree == d).
  double pmf(Degree d) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), d);
    if (it == support_.end() || *it != d) return 0.0;
    return probs_[static_cast<std::size_t>(it - support_.begin())];
  }

  /// Right-continuous step CDF, P(degree <= d). Negative arguments give 0.
  double cdf(std::int64_t d) const {
    if (d < 0) return 0.0;
    auto it = std::upper_bound(support_.begin(), support_.end(), static_cast<Degree>(d));
    if (it == support_.begin()) return 0.0;
    return cumulative_[static_cast<std::size_t>(it - support_.begin()) - 1];
  }

  friend bool operator==(const DegreeDistribution&, const DegreeDistribution&) = default;

 private:
  DegreeDistribution() = default;

  std::vector<Degree> support_;
  std::vector<std::size_t> counts_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
  double mean_ = 0.0;
  double std_ = 0.0;
  std::size_t n_nodes_ = 0;
};

inline double mean(const DegreeDistribution& dd) { return dd.mean(); }
inline double stddev(const DegreeDistribution& dd) { return dd.stddev(); }
inline double cdf(const DegreeDistribution& dd, std::int64_t d) { return dd.cdf(d); }

}  // namespace ddqc
