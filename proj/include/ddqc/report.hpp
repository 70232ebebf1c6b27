#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddqc/evaluation.hpp"
#include "ddqc/serialization.hpp"

namespace ddqc {

/**
 * Result of one evaluation experiment: a nested JSON document plus tidy
 * rows (experiment,method,param,value) for plotting.
 */
struct EvaluationReport {
  std::string experiment;
  Json document;
  std::vector<std::array<std::string, 3>> rows;  // method, param, value

  void add_row(const std::string& method, const std::string& param, double value) {
    rows.push_back({method, param, format_number(value)});
  }

  std::string to_csv() const {
    std::string out = "experiment,method,param,value\n";
    for (const auto& r : rows) out += experiment + "," + r[0] + "," + r[1] + "," + r[2] + "\n";
    return out;
  }

  std::string to_json() const { return document.dump(2) + "\n"; }
};

struct ExperimentConfig {
  QuantizationParams params;
  std::vector<Method> methods{Method::DDQC};
  FitFailurePolicy fit_failure = FitFailurePolicy::Abort;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

namespace detail {

inline EvaluationReport start_report(const std::string& experiment, const ExperimentConfig& config,
                                     std::size_t corpus_size) {
  EvaluationReport report;
  report.experiment = experiment;
  report.document["experiment"] = experiment;
  report.document["corpus_size"] = corpus_size;
  report.document["params"] = Json{{"alpha", config.params.alpha},
                                   {"beta", config.params.beta},
                                   {"gamma", config.params.gamma},
                                   {"seed", config.seed}};
  report.document["methods"] = Json::object();
  return report;
}

inline Json intra_inter_json(const IntraInter& r) {
  return Json{{"intra", r.intra}, {"inter", r.inter}, {"intra_pairs", r.intra_pairs}, {"inter_pairs", r.inter_pairs}};
}

inline DistanceMatrix matrix_for(std::span<const LabeledDistribution> corpus, Method method,
                                 const ExperimentConfig& config) {
  return pairwise_distances(corpus, method, config.params, {config.fit_failure, config.threads});
}

}  // namespace detail

/// kNN accuracy per method and K. With subset_size == 0 every item is
/// classified leave-one-out over the whole corpus; otherwise the accuracy
/// is averaged over `iterations` random subsets.
inline EvaluationReport run_knn(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config,
                                std::span<const std::size_t> ks, std::size_t subset_size = 0,
                                std::size_t iterations = 1) {
  auto report = detail::start_report("knn", config, corpus.size());
  report.document["protocol"] =
      subset_size == 0 ? Json{{"mode", "leave_one_out"}}
                       : Json{{"mode", "subsets"}, {"subset_size", subset_size}, {"iterations", iterations}};
  for (auto method : config.methods) {
    const auto m = detail::matrix_for(corpus, method, config);
    Json acc = Json::object();
    for (auto k : ks) {
      const double a = subset_size == 0 ? knn_accuracy(m, k) : subset_knn_experiment(m, subset_size, iterations, k, config.seed);
      acc[std::to_string(k)] = a;
      report.add_row(method_name(method), "K=" + std::to_string(k), a);
    }
    report.document["methods"][method_name(method)] = Json{{"knn_accuracy", acc}};
  }
  return report;
}

inline EvaluationReport run_interintra(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config) {
  auto report = detail::start_report("interintra", config, corpus.size());
  for (auto method : config.methods) {
    const auto nm = normalize_zscores(detail::matrix_for(corpus, method, config));
    const auto r = intra_inter(nm);
    auto entry = detail::intra_inter_json(r);
    entry["mu"] = nm.mu;
    entry["sigma"] = nm.sigma;
    report.document["methods"][method_name(method)] = entry;
    report.add_row(method_name(method), "intra", r.intra);
    report.add_row(method_name(method), "inter", r.inter);
  }
  return report;
}

/// series: name -> chronologically ordered snapshot ids.
inline EvaluationReport run_temporal(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config,
                                     const std::map<std::string, std::vector<std::string>>& series) {
  auto report = detail::start_report("temporal", config, corpus.size());
  for (auto method : config.methods) {
    const auto nm = normalize_zscores(detail::matrix_for(corpus, method, config));
    Json per_series = Json::object();
    for (const auto& [name, ids] : series) {
      Json values = Json::object();
      for (const auto& [id, value] : temporal_neighbor_distance(nm, ids)) {
        values[id] = value;
        report.add_row(method_name(method), id, value);
      }
      per_series[name] = values;
    }
    report.document["methods"][method_name(method)] = Json{{"temporal_series", per_series}};
  }
  return report;
}

inline EvaluationReport run_sweep(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config,
                                  std::span<const double> alphas, std::span<const double> gammas) {
  auto report = detail::start_report("sweep", config, corpus.size());
  Json grid = Json::array();
  for (const auto& cell : parameter_sweep(corpus, alphas, gammas, config.params.beta, config.threads)) {
    grid.push_back(Json{{"alpha", cell.alpha},
                        {"gamma", cell.gamma},
                        {"intra", cell.result.intra},
                        {"inter", cell.result.inter}});
    const std::string key = "alpha=" + format_number(cell.alpha) + ";gamma=" + format_number(cell.gamma);
    report.add_row("ddqc", key + ";intra", cell.result.intra);
    report.add_row("ddqc", key + ";inter", cell.result.inter);
  }
  report.document["methods"]["ddqc"] = Json{{"sweep_grid", grid}};
  return report;
}

inline EvaluationReport run_beta(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config,
                                 std::span<const int> betas) {
  auto report = detail::start_report("beta", config, corpus.size());
  Json series = Json::array();
  for (const auto& point : beta_series(corpus, betas, config.params.alpha, config.params.gamma, config.threads)) {
    series.push_back(Json{{"beta", point.beta}, {"intra", point.result.intra}, {"inter", point.result.inter}});
    report.add_row("ddqc", "beta=" + std::to_string(point.beta) + ";intra", point.result.intra);
    report.add_row("ddqc", "beta=" + std::to_string(point.beta) + ";inter", point.result.inter);
  }
  report.document["methods"]["ddqc"] = Json{{"beta_series", series}};
  return report;
}

inline EvaluationReport run_stability(std::span<const LabeledDistribution> corpus, const ExperimentConfig& config,
                                      std::span<const std::size_t> sizes) {
  auto report = detail::start_report("stability", config, corpus.size());
  for (auto method : config.methods) {
    const auto m = detail::matrix_for(corpus, method, config);
    Json series = Json::array();
    for (const auto& point : stability_series(m, sizes, config.seed)) {
      series.push_back(Json{{"size", point.size}, {"intra", point.result.intra}, {"inter", point.result.inter}});
      report.add_row(method_name(method), "size=" + std::to_string(point.size) + ";intra", point.result.intra);
      report.add_row(method_name(method), "size=" + std::to_string(point.size) + ";inter", point.result.inter);
    }
    report.document["methods"][method_name(method)] = Json{{"stability", series}};
  }
  return report;
}

}  // namespace ddqc
