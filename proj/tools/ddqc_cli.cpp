// Command-line front end: quantify, degrees, compare, generate, evaluate.
//
// Exit codes: 0 success, 1 domain/evaluation error, 2 I/O or parse error.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddqc/ddqc.hpp"

namespace fs = std::filesystem;
using namespace ddqc;

namespace {

struct Options {
  double alpha = 1.0;
  int beta = 3;
  double gamma = 0.8;
  std::string method = "ddqc";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  unsigned threads = 0;

  QuantizationParams params() const {
    QuantizationParams p{alpha, beta, gamma};
    p.validate();
    return p;
  }
};

void add_quantization_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.alpha, "region width multiplier")->capture_default_str();
  cmd->add_option("--beta", o.beta, "granularity exponent, 4*2^beta intervals")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "granularity discount of the distance")->capture_default_str();
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = std::string(detail::trim(item));
    if (item.empty()) continue;
    T value{};
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw ParseError(std::string("invalid ") + what + " list entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw ParseError(std::string("empty ") + what + " list");
  return out;
}

Graph read_graph(const std::string& path) { return load_edge_list_file(path); }

int cmd_degrees(const std::string& path, const Options& o) {
  const auto dd = DegreeDistribution::from_graph(read_graph(path));
  if (o.format == "csv") {
    std::cout << to_csv(dd);
  } else {
    std::cout << to_json(dd).dump(2) << '\n';
  }
  return 0;
}

int cmd_quantify(const std::string& path, const Options& o) {
  const auto params = o.params();
  const auto dd = DegreeDistribution::from_graph(read_graph(path));
  const auto q = quantify(dd, params);
  if (o.format == "csv") {
    std::cout << "n,mean,std,min,max," << quantified_csv_header(q.beta) << '\n'
              << dd.n_nodes() << ',' << format_number(dd.mean()) << ',' << format_number(dd.stddev()) << ','
              << dd.min_degree() << ',' << dd.max_degree() << ',' << to_csv_row(q) << '\n';
  } else {
    Json doc;
    doc["graph"] = path;
    doc["summary"] = Json{{"n", dd.n_nodes()},
                          {"mean", dd.mean()},
                          {"std", dd.stddev()},
                          {"min", dd.min_degree()},
                          {"max", dd.max_degree()}};
    doc["quantification"] = to_json(q);
    std::cout << doc.dump(2) << '\n';
  }
  return 0;
}

int cmd_compare(const std::string& a, const std::string& b, const Options& o) {
  const auto method = parse_method(o.method);
  const auto da = DegreeDistribution::from_graph(read_graph(a));
  const auto db = DegreeDistribution::from_graph(read_graph(b));
  std::cout << format_number(distance(method, da, db, o.params())) << '\n';
  return 0;
}

struct GenerateOptions {
  std::string model;
  bool sample = false;
  bool dataset = false;
  std::string models;
  std::size_t per_model = 1;
  std::size_t n = 1000;
  std::size_t n_min = 1000;
  std::size_t n_max = 5000;
  std::size_t k = 3;
  double copy_beta = 0.5;
  double density = 0.003;
  double p = 0.2;
  double backward_ratio = 0.32;
  std::string initiator = "0.8,0.6,0.5,0.3";
  int k_power = 10;
  double exponent = 2.7;
  double rewire = 0.5;
};

ModelSpec explicit_spec(Model model, const GenerateOptions& g, std::uint64_t seed) {
  ModelSpec spec;
  spec.model = model;
  spec.n_nodes = g.n;
  spec.seed = seed;
  switch (model) {
    case Model::BA: spec.params = BaParams{g.k}; break;
    case Model::CM: spec.params = CopyingParams{g.k, g.copy_beta}; break;
    case Model::ER: spec.params = ErParams{g.density}; break;
    case Model::FF: spec.params = ForestFireParams{g.p, g.backward_ratio}; break;
    case Model::KG: {
      const auto values = parse_list<double>(g.initiator, "initiator");
      if (values.size() != 4) throw ParameterError("initiator needs 4 comma-separated values");
      spec.params = KroneckerParams{{values[0], values[1], values[2], values[3]}, g.k_power};
      spec.n_nodes = std::size_t{1} << std::clamp(g.k_power, 1, 20);
      break;
    }
    case Model::RP: spec.params = PowerLawParams{g.exponent}; break;
    case Model::WS: spec.params = WsParams{g.k, g.rewire}; break;
    case Model::RG: spec.params = RegularParams{g.k}; break;
  }
  return spec;
}

int cmd_generate(const GenerateOptions& g, const Options& o) {
  if (o.out.empty()) throw ParameterError("--out directory is required");
  std::vector<LabeledGraph> items;
  const SizeRange range{g.n_min, g.n_max};
  if (g.dataset) {
    std::vector<Model> models;
    if (g.models.empty()) {
      models.assign(kAllModels.begin(), kAllModels.end());
    } else {
      std::stringstream ss(g.models);
      std::string name;
      while (std::getline(ss, name, ',')) models.push_back(parse_model(name));
    }
    items = generate_dataset(models, g.per_model, o.seed, range, o.threads);
  } else {
    if (g.model.empty()) throw ParameterError("--model or --dataset is required");
    const auto model = parse_model(g.model);
    if (g.sample) {
      items = generate_dataset({model}, g.per_model, o.seed, range, o.threads);
    } else {
      const auto spec = explicit_spec(model, g, o.seed);
      const auto label = model_name(model);
      items.push_back(LabeledGraph{generate(spec), label, instance_name(label, 0), spec});
    }
  }
  const auto manifest = write_dataset(o.out, items);
  std::cout << "wrote " << manifest.entries.size() << " graphs to " << o.out << '\n';
  return 0;
}

struct EvaluateOptions {
  std::string manifest;
  std::string experiment = "knn";
  std::string ks = "5";
  std::size_t subset_size = 0;
  std::size_t iterations = 100;
  std::string sizes = "100,200,500,1000";
  std::string alphas = "0.25,0.5,1,2,4,8";
  std::string gammas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1,1.1,1.2,1.3,1.4,1.5,1.6,1.7,1.8,1.9,2";
  std::string betas = "0,1,2,3,4";
  std::string on_fit_failure = "abort";
};

// label -> snapshot ids ordered by timestamp (numerically when all parse).
std::map<std::string, std::vector<std::string>> temporal_series(const Manifest& manifest) {
  std::map<std::string, std::vector<const ManifestEntry*>> grouped;
  for (const auto& e : manifest.entries) {
    if (e.timestamp) grouped[e.label].push_back(&e);
  }
  std::map<std::string, std::vector<std::string>> out;
  for (auto& [label, rows] : grouped) {
    auto numeric = [](const std::string& s, double& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc() && ptr == s.data() + s.size();
    };
    bool all_numeric = true;
    for (const auto* r : rows) {
      double v;
      all_numeric = all_numeric && numeric(*r->timestamp, v);
    }
    std::stable_sort(rows.begin(), rows.end(), [&](const ManifestEntry* a, const ManifestEntry* b) {
      if (all_numeric) {
        double x = 0, y = 0;
        numeric(*a->timestamp, x);
        numeric(*b->timestamp, y);
        return x < y;
      }
      return *a->timestamp < *b->timestamp;
    });
    for (const auto* r : rows) out[label].push_back(r->path);
  }
  return out;
}

int cmd_evaluate(const EvaluateOptions& e, const Options& o) {
  const fs::path manifest_path(e.manifest);
  const auto manifest = read_manifest_file(manifest_path);
  const auto corpus = load_corpus(manifest, manifest_path.parent_path(), o.threads);

  ExperimentConfig config;
  config.params = o.params();
  config.seed = o.seed;
  config.threads = o.threads;
  if (o.method == "all") {
    config.methods.assign(kAllMethods.begin(), kAllMethods.end());
  } else {
    config.methods = {parse_method(o.method)};
  }
  if (e.on_fit_failure == "abort") {
    config.fit_failure = FitFailurePolicy::Abort;
  } else if (e.on_fit_failure == "max") {
    config.fit_failure = FitFailurePolicy::MaxDistance;
  } else {
    throw ParameterError("--on-fit-failure must be abort or max");
  }

  EvaluationReport report;
  if (e.experiment == "knn") {
    const auto ks = parse_list<std::size_t>(e.ks, "K");
    report = run_knn(corpus, config, ks, e.subset_size, e.iterations);
  } else if (e.experiment == "interintra") {
    report = run_interintra(corpus, config);
  } else if (e.experiment == "temporal") {
    const auto series = temporal_series(manifest);
    if (series.empty()) throw DomainError("manifest has no timestamped snapshots");
    report = run_temporal(corpus, config, series);
  } else if (e.experiment == "sweep") {
    const auto alphas = parse_list<double>(e.alphas, "alpha");
    const auto gammas = parse_list<double>(e.gammas, "gamma");
    report = run_sweep(corpus, config, alphas, gammas);
  } else if (e.experiment == "stability") {
    const auto sizes = parse_list<std::size_t>(e.sizes, "size");
    report = run_stability(corpus, config, sizes);
  } else if (e.experiment == "beta") {
    const auto betas = parse_list<int>(e.betas, "beta");
    report = run_beta(corpus, config, betas);
  } else {
    throw ParameterError("unknown experiment '" + e.experiment + "'");
  }

  if (o.out.empty()) {
    std::cout << (o.format == "csv" ? report.to_csv() : report.to_json());
    return 0;
  }
  const fs::path prefix(o.out);
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  for (const auto& [ext, text] : {std::pair{".json", report.to_json()}, std::pair{".csv", report.to_csv()}}) {
    std::ofstream out(prefix.string() + ext);
    if (!out) throw IoError("cannot write '" + prefix.string() + ext + "'");
    out << text;
  }
  std::cout << "wrote " << prefix.string() << ".json and " << prefix.string() << ".csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree distribution quantification and comparison"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");

  std::string graph_a;
  std::string graph_b;

  auto* degrees = app.add_subcommand("degrees", "print the degree distribution of an edge list");
  degrees->add_option("graph", graph_a, "edge-list file")->required();
  degrees->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* quantify_cmd = app.add_subcommand("quantify", "quantify the degree distribution of an edge list");
  quantify_cmd->add_option("graph", graph_a, "edge-list file")->required();
  add_quantization_flags(quantify_cmd, o);
  quantify_cmd->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* compare = app.add_subcommand("compare", "distance between the degree distributions of two edge lists");
  compare->add_option("graph_a", graph_a)->required();
  compare->add_option("graph_b", graph_b)->required();
  add_quantization_flags(compare, o);
  compare->add_option("--method", o.method)->check(CLI::IsMember({"ddqc", "ks", "powerlaw", "percentiles"}));

  GenerateOptions g;
  auto* gen = app.add_subcommand("generate", "synthesize artificial networks");
  gen->add_option("--model", g.model, "BA, CM, ER, FF, KG, RP, WS or RG");
  gen->add_flag("--sample", g.sample, "draw parameters from the corpus ranges");
  gen->add_flag("--dataset", g.dataset, "generate every model (or --models)");
  gen->add_option("--models", g.models, "comma-separated model subset for --dataset");
  gen->add_option("--per-model", g.per_model, "instances per model")->capture_default_str();
  gen->add_option("--n", g.n, "node count")->capture_default_str();
  gen->add_option("--n-min", g.n_min, "minimum node count when sampling")->capture_default_str();
  gen->add_option("--n-max", g.n_max, "maximum node count when sampling")->capture_default_str();
  gen->add_option("--k", g.k, "edges per node (BA, CM), lattice degree (WS), degree (RG)")->capture_default_str();
  gen->add_option("--copy-beta", g.copy_beta, "CM uniform-choice probability")->capture_default_str();
  gen->add_option("--density", g.density, "ER density")->capture_default_str();
  gen->add_option("--p", g.p, "FF forward burning probability")->capture_default_str();
  gen->add_option("--backward-ratio", g.backward_ratio, "FF backward burning ratio")->capture_default_str();
  gen->add_option("--initiator", g.initiator, "KG 2x2 initiator, row-major")->capture_default_str();
  gen->add_option("--k-power", g.k_power, "KG Kronecker power")->capture_default_str();
  gen->add_option("--exponent", g.exponent, "RP power-law exponent")->capture_default_str();
  gen->add_option("--rewire", g.rewire, "WS rewiring probability")->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_option("--out", o.out, "output directory")->required();

  EvaluateOptions e;
  auto* eval = app.add_subcommand("evaluate", "run an evaluation experiment over a manifest");
  eval->add_option("manifest", e.manifest, "manifest CSV")->required();
  eval->add_option("--experiment", e.experiment)
      ->check(CLI::IsMember({"knn", "interintra", "temporal", "sweep", "stability", "beta"}))
      ->capture_default_str();
  add_quantization_flags(eval, o);
  eval->add_option("--method", o.method, "ddqc, ks, powerlaw, percentiles or all")
      ->check(CLI::IsMember({"ddqc", "ks", "powerlaw", "percentiles", "all"}))
      ->capture_default_str();
  eval->add_option("--k", e.ks, "kNN K values, comma-separated")->capture_default_str();
  eval->add_option("--subset-size", e.subset_size, "kNN subset size (0 = leave-one-out on all)")->capture_default_str();
  eval->add_option("--iterations", e.iterations, "kNN subset iterations")->capture_default_str();
  eval->add_option("--sizes", e.sizes, "stability subset sizes")->capture_default_str();
  eval->add_option("--alphas", e.alphas, "sweep alpha values")->capture_default_str();
  eval->add_option("--gammas", e.gammas, "sweep gamma values")->capture_default_str();
  eval->add_option("--betas", e.betas, "beta series values")->capture_default_str();
  eval->add_option("--on-fit-failure", e.on_fit_failure, "power-law fit failures: abort or max")
      ->capture_default_str();
  eval->add_option("--seed", o.seed)->capture_default_str();
  eval->add_option("--format", o.format, "stdout format when --out is absent")
      ->check(CLI::IsMember({"json", "csv"}));
  eval->add_option("--out", o.out, "report path prefix (writes .json and .csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  }

  try {
    if (*degrees) return cmd_degrees(graph_a, o);
    if (*quantify_cmd) return cmd_quantify(graph_a, o);
    if (*compare) return cmd_compare(graph_a, graph_b, o);
    if (*gen) return cmd_generate(g, o);
    if (*eval) return cmd_evaluate(e, o);
  } catch (const IoError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
