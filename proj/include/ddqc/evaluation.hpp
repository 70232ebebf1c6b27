#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "ddqc/baselines.hpp"
#include "ddqc/degree_distribution.hpp"
#include "ddqc/error.hpp"
#include "ddqc/generators.hpp"
#include "ddqc/parallel.hpp"
#include "ddqc/quantification.hpp"
#include "ddqc/random.hpp"

namespace ddqc {

enum class Method { DDQC, KS, PowerLaw, Percentiles };

inline constexpr std::array<Method, 4> kAllMethods = {Method::DDQC, Method::KS, Method::PowerLaw,
                                                      Method::Percentiles};

inline std::string method_name(Method m) {
  switch (m) {
    case Method::DDQC: return "ddqc";
    case Method::KS: return "ks";
    case Method::PowerLaw: return "powerlaw";
    case Method::Percentiles: return "percentiles";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  for (auto m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

/// Distance between two distributions under any method.
inline double distance(Method method, const DegreeDistribution& a, const DegreeDistribution& b,
                       const QuantizationParams& params = {}) {
  switch (method) {
    case Method::DDQC: return ddqc_distance(a, b, params);
    case Method::KS: return ks_distance(a, b);
    case Method::PowerLaw: return powerlaw_distance(a, b);
    case Method::Percentiles: return percentiles_distance(a, b);
  }
  return 0.0;
}

struct LabeledDistribution {
  std::string id;
  std::string label;
  DegreeDistribution distribution;
};

inline std::vector<LabeledDistribution> distributions_of(std::span<const LabeledGraph> items) {
  std::vector<LabeledDistribution> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    out.push_back({item.instance_id, item.label, DegreeDistribution::from_graph(item.graph)});
  }
  return out;
}

/// Symmetric matrix of pairwise distances with zero diagonal, row-major.
struct DistanceMatrix {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<double> values;
  Method method = Method::DDQC;
  std::optional<QuantizationParams> params;

  std::size_t size() const noexcept { return ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * size() + j]; }
};

/// z-scored distances; mu and sigma are taken over ordered off-diagonal pairs.
struct NormalizedMatrix {
  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::vector<double> values;
  double mu = 0.0;
  double sigma = 0.0;

  std::size_t size() const noexcept { return ids.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
};

// How pairs involving a distribution without a power-law fit are handled.
enum class FitFailurePolicy {
  Abort,        // throw FitError
  MaxDistance,  // failed vs fitted: the largest fitted-pair distance; failed vs failed: 0
};

struct PairwiseOptions {
  FitFailurePolicy fit_failure = FitFailurePolicy::Abort;
  unsigned threads = 0;
};

namespace detail {

template <typename Feature, typename Metric>
void fill_matrix(DistanceMatrix& m, const std::vector<Feature>& features, Metric metric, unsigned threads) {
  const std::size_t n = m.size();
  parallel_for(
      n,
      [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = metric(features[i], features[j]);
          m.values[i * n + j] = d;
          m.values[j * n + i] = d;
        }
      },
      threads);
}

}  // namespace detail

/// Pairwise distances over a labeled corpus. Features (quantifications,
/// percentile vectors, exponents) are computed once per item.
inline DistanceMatrix pairwise_distances(std::span<const LabeledDistribution> items, Method method,
                                         const QuantizationParams& params = {}, const PairwiseOptions& options = {}) {
  if (items.size() < 2) throw DomainError("pairwise distances need at least 2 items");
  DistanceMatrix m;
  m.method = method;
  for (const auto& item : items) {
    m.ids.push_back(item.id);
    m.labels.push_back(item.label);
  }
  const std::size_t n = items.size();
  m.values.assign(n * n, 0.0);

  switch (method) {
    case Method::DDQC: {
      params.validate();
      m.params = params;
      std::vector<std::vector<std::vector<double>>> levels(n);
      parallel_for(
          n, [&](std::size_t i) { levels[i] = quantification_levels(quantify(items[i].distribution, params)); },
          options.threads);
      detail::fill_matrix(
          m, levels, [&](const auto& a, const auto& b) { return ddqc_distance_levels(a, b, params.gamma); },
          options.threads);
      break;
    }
    case Method::KS: {
      std::vector<const DegreeDistribution*> dds(n);
      for (std::size_t i = 0; i < n; ++i) dds[i] = &items[i].distribution;
      detail::fill_matrix(m, dds, [](const auto* a, const auto* b) { return ks_distance(*a, *b); }, options.threads);
      break;
    }
    case Method::Percentiles: {
      std::vector<PercentileVector> vecs(n);
      for (std::size_t i = 0; i < n; ++i) vecs[i] = percentiles_quantify(items[i].distribution);
      detail::fill_matrix(
          m, vecs, [](const auto& a, const auto& b) { return percentiles_distance(a, b); }, options.threads);
      break;
    }
    case Method::PowerLaw: {
      std::vector<std::optional<double>> exponents(n);
      for (std::size_t i = 0; i < n; ++i) {
        try {
          exponents[i] = powerlaw_exponent(items[i].distribution);
        } catch (const FitError& e) {
          if (options.fit_failure == FitFailurePolicy::Abort) {
            throw FitError("item '" + items[i].id + "': " + e.what());
          }
        }
      }
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (exponents[i] && exponents[j]) worst = std::max(worst, std::abs(*exponents[i] - *exponents[j]));
        }
      }
      detail::fill_matrix(
          m, exponents,
          [worst](const std::optional<double>& a, const std::optional<double>& b) {
            if (a && b) return std::abs(*a - *b);
            return a || b ? worst : 0.0;
          },
          options.threads);
      break;
    }
  }
  return m;
}

inline DistanceMatrix pairwise_distances(std::span<const LabeledGraph> items, Method method,
                                         const QuantizationParams& params = {}, const PairwiseOptions& options = {}) {
  const auto dists = distributions_of(items);
  return pairwise_distances(std::span<const LabeledDistribution>(dists), method, params, options);
}

inline NormalizedMatrix normalize_zscores(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw DomainError("normalization needs at least 2 items");
  const auto pairs = static_cast<double>(n * (n - 1));
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sum += m.at(i, j);
    }
  }
  const double mu = sum / pairs;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) sq += (m.at(i, j) - mu) * (m.at(i, j) - mu);
    }
  }
  const double sigma = std::sqrt(sq / pairs);
  if (!(sigma > 0.0)) throw DomainError("degenerate normalization: all pairwise distances are equal");

  NormalizedMatrix out{m.ids, m.labels, std::vector<double>(n * n, 0.0), mu, sigma};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) out.values[i * n + j] = (m.at(i, j) - mu) / sigma;
    }
  }
  return out;
}

struct IntraInter {
  double intra = 0.0;
  double inter = 0.0;
  std::size_t intra_pairs = 0;  // ordered
  std::size_t inter_pairs = 0;
};

/// Mean normalized distance over same-label and different-label pairs.
inline IntraInter intra_inter(const NormalizedMatrix& nm) {
  IntraInter r;
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  const std::size_t n = nm.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (nm.labels[i] == nm.labels[j]) {
        intra_sum += nm.at(i, j);
        ++r.intra_pairs;
      } else {
        inter_sum += nm.at(i, j);
        ++r.inter_pairs;
      }
    }
  }
  if (r.intra_pairs == 0) throw DomainError("no intra-class pairs");
  if (r.inter_pairs == 0) throw DomainError("no inter-class pairs");
  r.intra = intra_sum / static_cast<double>(r.intra_pairs);
  r.inter = inter_sum / static_cast<double>(r.inter_pairs);
  return r;
}

/**
 * Leave-one-out kNN accuracy. Neighbors are ordered by distance, then by
 * instance id, then by position. The predicted label is the most frequent
 * among the K nearest; among equally frequent labels the one whose first
 * neighbor is nearest wins.
 */
inline double knn_accuracy(const DistanceMatrix& m, std::size_t k) {
  const std::size_t n = m.size();
  if (k < 1 || k >= n) throw ParameterError("K must satisfy 1 <= K < item count");
  std::size_t correct = 0;
  std::vector<std::size_t> others;
  others.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    auto nearer = [&](std::size_t a, std::size_t b) {
      const double da = m.at(i, a);
      const double db = m.at(i, b);
      if (da != db) return da < db;
      if (m.ids[a] != m.ids[b]) return m.ids[a] < m.ids[b];
      return a < b;
    };
    std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(k), others.end(), nearer);

    // label -> (votes, rank of its nearest neighbor)
    std::map<std::string_view, std::pair<std::size_t, std::size_t>> votes;
    for (std::size_t r = 0; r < k; ++r) {
      auto [it, inserted] = votes.try_emplace(m.labels[others[r]], 0, r);
      ++it->second.first;
    }
    std::string_view predicted;
    std::size_t best_votes = 0;
    std::size_t best_rank = n;
    for (const auto& [label, entry] : votes) {
      if (entry.first > best_votes || (entry.first == best_votes && entry.second < best_rank)) {
        predicted = label;
        best_votes = entry.first;
        best_rank = entry.second;
      }
    }
    if (predicted == m.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

/// Restriction of a matrix to the given positions, in the given order.
template <typename Matrix>
Matrix submatrix(const Matrix& m, std::span<const std::size_t> keep) {
  Matrix out = m;
  const std::size_t n = m.size();
  const std::size_t k = keep.size();
  out.ids.clear();
  out.labels.clear();
  out.values.assign(k * k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    if (keep[a] >= n) throw ParameterError("submatrix index out of range");
    out.ids.push_back(m.ids[keep[a]]);
    out.labels.push_back(m.labels[keep[a]]);
    for (std::size_t b = 0; b < k; ++b) out.values[a * k + b] = m.values[keep[a] * n + keep[b]];
  }
  return out;
}

inline std::vector<std::size_t> sample_positions(std::size_t n, std::size_t count, Rng& rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> picked;
  picked.reserve(count);
  std::sample(all.begin(), all.end(), std::back_inserter(picked), count, rng);
  return picked;
}

/**
 * Mean kNN accuracy over `iterations` subsets of `subset_size` items drawn
 * uniformly without replacement from the full matrix. Subsets keep the
 * original item order.
 */
inline double subset_knn_experiment(const DistanceMatrix& m, std::size_t subset_size, std::size_t iterations,
                                    std::size_t k, std::uint64_t seed) {
  if (subset_size > m.size() || subset_size < 2) throw ParameterError("subset size must be in [2, item count]");
  if (iterations == 0) throw ParameterError("iterations must be >= 1");
  Rng rng(seed);
  double total = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    const auto keep = sample_positions(m.size(), subset_size, rng);
    total += knn_accuracy(submatrix(m, std::span<const std::size_t>(keep)), k);
  }
  return total / static_cast<double>(iterations);
}

/// For each snapshot (chronological), the mean normalized distance to its
/// previous and next snapshots.
inline std::vector<std::pair<std::string, double>> temporal_neighbor_distance(
    const NormalizedMatrix& nm, std::span<const std::string> snapshot_ids) {
  if (snapshot_ids.size() < 2) throw DomainError("temporal series needs at least 2 snapshots");
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < nm.size(); ++i) position.emplace(nm.ids[i], i);
  std::vector<std::size_t> pos;
  for (const auto& id : snapshot_ids) {
    auto it = position.find(id);
    if (it == position.end()) throw DomainError("unknown snapshot id '" + id + "'");
    pos.push_back(it->second);
  }
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t s = 0; s < pos.size(); ++s) {
    double sum = 0.0;
    int count = 0;
    if (s > 0) {
      sum += nm.at(pos[s], pos[s - 1]);
      ++count;
    }
    if (s + 1 < pos.size()) {
      sum += nm.at(pos[s], pos[s + 1]);
      ++count;
    }
    out.emplace_back(snapshot_ids[s], sum / count);
  }
  return out;
}

struct SweepCell {
  double alpha = 0.0;
  double gamma = 0.0;
  IntraInter result;
};

/**
 * INTRA/INTER of the ddqc distance for every (alpha, gamma) pair at a fixed
 * beta, alpha-major. Quantifications are computed once per alpha and the
 * per-level L1 matrices once per alpha; each gamma only reweights them.
 */
inline std::vector<SweepCell> parameter_sweep(std::span<const LabeledDistribution> items, std::span<const double> alphas,
                                              std::span<const double> gammas, int beta, unsigned threads = 0) {
  const std::size_t n = items.size();
  if (n < 2) throw DomainError("sweep needs at least 2 items");
  std::vector<SweepCell> grid;
  for (double alpha : alphas) {
    QuantizationParams base{alpha, beta, 1.0};
    base.validate();
    std::vector<std::vector<std::vector<double>>> levels(n);
    parallel_for(
        n, [&](std::size_t i) { levels[i] = quantification_levels(quantify(items[i].distribution, base)); }, threads);
    const std::size_t level_count = static_cast<std::size_t>(beta) + 1;
    // per_level[s][i*n+j] = L1 distance at level s
    std::vector<std::vector<double>> per_level(level_count, std::vector<double>(n * n, 0.0));
    parallel_for(
        n,
        [&](std::size_t i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t s = 0; s < level_count; ++s) {
              double sum = 0.0;
              for (std::size_t x = 0; x < levels[i][s].size(); ++x) sum += std::abs(levels[i][s][x] - levels[j][s][x]);
              per_level[s][i * n + j] = sum;
              per_level[s][j * n + i] = sum;
            }
          }
        },
        threads);

    DistanceMatrix m;
    m.method = Method::DDQC;
    for (const auto& item : items) {
      m.ids.push_back(item.id);
      m.labels.push_back(item.label);
    }
    for (double gamma : gammas) {
      if (!(gamma > 0.0)) throw ParameterError("gamma must be > 0");
      m.params = QuantizationParams{alpha, beta, gamma};
      m.values.assign(n * n, 0.0);
      // Same accumulation order as ddqc_distance_levels.
      for (std::size_t idx = 0; idx < n * n; ++idx) {
        double total = 0.0;
        double weight = 1.0;
        for (std::size_t s = 0; s < level_count; ++s) {
          total += weight * per_level[s][idx];
          weight *= gamma;
        }
        m.values[idx] = total;
      }
      grid.push_back({alpha, gamma, intra_inter(normalize_zscores(m))});
    }
  }
  return grid;
}

struct BetaPoint {
  int beta = 0;
  IntraInter result;
};

inline std::vector<BetaPoint> beta_series(std::span<const LabeledDistribution> items, std::span<const int> betas,
                                          double alpha, double gamma, unsigned threads = 0) {
  std::vector<BetaPoint> out;
  for (int beta : betas) {
    const QuantizationParams params{alpha, beta, gamma};
    const auto m = pairwise_distances(items, Method::DDQC, params, {FitFailurePolicy::Abort, threads});
    out.push_back({beta, intra_inter(normalize_zscores(m))});
  }
  return out;
}

struct StabilityPoint {
  std::size_t size = 0;
  IntraInter result;
};

/// INTRA/INTER over one random subset per requested size (sizes larger than
/// the corpus are clamped to it).
inline std::vector<StabilityPoint> stability_series(const DistanceMatrix& m, std::span<const std::size_t> sizes,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StabilityPoint> out;
  for (std::size_t size : sizes) {
    const std::size_t take = std::min(size, m.size());
    const auto keep = sample_positions(m.size(), take, rng);
    out.push_back({take, intra_inter(normalize_zscores(submatrix(m, std::span<const std::size_t>(keep))))});
  }
  return out;
}

}  // namespace ddqc
