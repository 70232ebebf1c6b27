#pragma once

#include <algorithm>
#include <cctype>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddqc/error.hpp"
#include "ddqc/graph.hpp"
#include "ddqc/parallel.hpp"
#include "ddqc/random.hpp"

namespace ddqc {

enum class Model { BA, CM, ER, FF, KG, RP, WS, RG };

inline constexpr std::array<Model, 8> kAllModels = {Model::BA, Model::CM, Model::ER, Model::FF,
                                                     Model::KG, Model::RP, Model::WS, Model::RG};

inline std::string model_name(Model m) {
  switch (m) {
    case Model::BA: return "BA";
    case Model::CM: return "CM";
    case Model::ER: return "ER";
    case Model::FF: return "FF";
    case Model::KG: return "KG";
    case Model::RP: return "RP";
    case Model::WS: return "WS";
    case Model::RG: return "RG";
  }
  return "?";
}

inline Model parse_model(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  for (auto m : kAllModels) {
    if (model_name(m) == upper) return m;
  }
  throw ParameterError("unknown model '" + std::string(name) + "'");
}

struct BaParams {
  std::size_t k = 3;
};
struct CopyingParams {
  std::size_t k = 3;
  double copy_beta = 0.5;  // probability of uniform (non-copied) endpoints
};
struct ErParams {
  double density = 0.003;
};
struct ForestFireParams {
  double p = 0.2;                // forward burning probability
  double backward_ratio = 0.32;  // backward burning probability is backward_ratio * p
};
struct KroneckerParams {
  std::array<double, 4> initiator{0.8, 0.6, 0.5, 0.3};  // row-major 2x2
  int k_power = 10;
};
struct PowerLawParams {
  double exponent = 2.7;
};
struct WsParams {
  std::size_t k = 4;
  double rewire = 0.5;
};
struct RegularParams {
  std::size_t k = 4;
};

using ModelParams = std::variant<BaParams, CopyingParams, ErParams, ForestFireParams, KroneckerParams,
                                 PowerLawParams, WsParams, RegularParams>;

struct ModelSpec {
  Model model = Model::BA;
  ModelParams params = BaParams{};
  std::size_t n_nodes = 1000;  // for KG this is 2^k_power
  std::uint64_t seed = 0;
};

struct LabeledGraph {
  Graph graph;
  std::string label;
  std::string instance_id;
  std::optional<ModelSpec> spec;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

inline bool contains(const std::vector<NodeId>& v, NodeId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

inline void add_clique(std::vector<Edge>& edges, std::size_t size) {
  for (NodeId a = 0; a < size; ++a) {
    for (NodeId b = a + 1; b < size; ++b) edges.push_back({a, b});
  }
}

// k distinct nodes uniformly from [0, bound).
inline std::vector<NodeId> distinct_uniform(Rng& rng, std::size_t bound, std::size_t k) {
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(bound - 1));
  std::vector<NodeId> out;
  out.reserve(k);
  while (out.size() < k) {
    const NodeId x = pick(rng);
    if (!contains(out, x)) out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Preferential attachment from a (k+1)-clique; each new node links to k
/// distinct existing nodes with probability proportional to degree.
inline Graph gen_ba(std::size_t n, std::size_t k, std::uint64_t seed) {
  detail::require(k >= 1 && k < n, "BA requires 1 <= k < n");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve((k + 1) * k / 2 + (n - k - 1) * k);
  detail::add_clique(edges, k + 1);
  // Each endpoint appears once per incident edge: uniform picks are degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (const auto& e : edges) {
    endpoints.push_back(e.u);
    endpoints.push_back(e.v);
  }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(k + 1); v < n; ++v) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < k) {
      const NodeId t = endpoints[pick(rng)];
      if (!detail::contains(chosen, t)) chosen.push_back(t);
    }
    for (auto t : chosen) {
      edges.push_back({t, v});
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph(n, std::move(edges));
}

/// Copying model from a (k+1)-clique. Each new node takes k distinct
/// endpoints: uniformly with probability copy_beta, otherwise k neighbors of
/// a uniformly chosen prototype (uniform fallback if it has fewer than k).
inline Graph gen_copying(std::size_t n, std::size_t k, double copy_beta, std::uint64_t seed) {
  detail::require(k >= 1 && k < n, "copying model requires 1 <= k < n");
  detail::require(copy_beta > 0.0 && copy_beta < 1.0, "copying model requires 0 < beta < 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  detail::add_clique(edges, k + 1);
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::bernoulli_distribution uniform_choice(copy_beta);
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(k + 1); v < n; ++v) {
    targets.clear();
    if (uniform_choice(rng)) {
      targets = detail::distinct_uniform(rng, v, k);
    } else {
      const NodeId proto = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
      if (adj[proto].size() >= k) {
        std::sample(adj[proto].begin(), adj[proto].end(), std::back_inserter(targets), k, rng);
      } else {
        targets = detail::distinct_uniform(rng, v, k);
      }
    }
    for (auto t : targets) {
      edges.push_back({t, v});
      adj[t].push_back(v);
      adj[v].push_back(t);
    }
  }
  return Graph(n, std::move(edges));
}

/// G(n, p) with p = density, by geometric skipping over the pair sequence.
inline Graph gen_er(std::size_t n, double density, std::uint64_t seed) {
  detail::require(density > 0.0 && density <= 1.0, "ER requires 0 < density <= 1");
  std::vector<Edge> edges;
  if (density >= 1.0) {
    detail::add_clique(edges, n);
    return Graph(n, std::move(edges));
  }
  Rng rng(seed);
  const double log_q = std::log1p(-density);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = uniform01(rng);
    const double skip = std::floor(std::log1p(-r) / log_q);
    if (skip >= static_cast<double>(nn) * static_cast<double>(nn)) break;
    w += 1 + static_cast<std::int64_t>(skip);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
  }
  return Graph(n, std::move(edges));
}

/**
 * Forest Fire, undirected projection. Each new node links to a uniform
 * ambassador and spreads recursively: from every burned node x it burns a
 * geometric number (mean p/(1-p)) of x's unburned out-links and a geometric
 * number (mean rp/(1-rp), r = backward_ratio) of its unburned in-links,
 * linking to all of them. Arc direction (new node -> target) is tracked only
 * to drive the forward/backward split.
 */
inline Graph gen_forest_fire(std::size_t n, double p, double backward_ratio, std::uint64_t seed) {
  detail::require(n >= 1, "forest fire requires n >= 1");
  detail::require(p >= 0.0 && p < 1.0, "forest fire requires 0 <= p < 1");
  detail::require(backward_ratio >= 0.0 && backward_ratio * p < 1.0, "forest fire backward probability must be < 1");
  Rng rng(seed);
  std::geometric_distribution<std::size_t> forward(1.0 - p);
  std::geometric_distribution<std::size_t> backward(1.0 - backward_ratio * p);
  std::vector<std::vector<NodeId>> out(n);
  std::vector<std::vector<NodeId>> in(n);
  std::vector<char> burned(n, 0);
  std::vector<NodeId> linked;
  std::vector<NodeId> candidates;
  std::vector<NodeId> picked;
  std::deque<NodeId> frontier;
  std::vector<Edge> edges;

  auto spread = [&](const std::vector<NodeId>& pool, std::size_t count) {
    if (count == 0) return;
    candidates.clear();
    for (auto y : pool) {
      if (!burned[y]) candidates.push_back(y);
    }
    picked.clear();
    std::sample(candidates.begin(), candidates.end(), std::back_inserter(picked), count, rng);
    for (auto y : picked) {
      burned[y] = 1;
      linked.push_back(y);
      frontier.push_back(y);
    }
  };

  for (NodeId v = 1; v < n; ++v) {
    const NodeId ambassador = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
    linked.assign(1, ambassador);
    burned[ambassador] = 1;
    frontier.assign(1, ambassador);
    while (!frontier.empty()) {
      const NodeId x = frontier.front();
      frontier.pop_front();
      const std::size_t nf = p > 0.0 ? forward(rng) : 0;
      const std::size_t nb = p > 0.0 ? backward(rng) : 0;
      spread(out[x], nf);
      spread(in[x], nb);
    }
    for (auto y : linked) {
      burned[y] = 0;
      out[v].push_back(y);
      in[y].push_back(v);
      edges.push_back({y, v});
    }
  }
  return Graph(n, std::move(edges));
}

/// Stochastic Kronecker graph on 2^k_power nodes: pair (u, v), u < v, is an
/// edge with probability prod_b initiator[bit_b(u)][bit_b(v)].
inline Graph gen_kronecker(const std::array<double, 4>& initiator, int k_power, std::uint64_t seed) {
  detail::require(k_power >= 1 && k_power <= 20, "kronecker requires 1 <= k_power <= 20");
  for (double x : initiator) detail::require(x >= 0.0 && x <= 1.0, "kronecker initiator entries must be in [0, 1]");
  Rng rng(seed);
  const std::size_t n = std::size_t{1} << k_power;
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      double prob = 1.0;
      for (int b = 0; b < k_power && prob > 0.0; ++b) {
        prob *= initiator[2 * ((u >> b) & 1u) + ((v >> b) & 1u)];
      }
      if (prob >= 1.0 || (prob > 0.0 && uniform01(rng) < prob)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

/**
 * Expected-degree (Chung-Lu) random graph with Zipf(exponent) target
 * weights: (i, j) is an edge with probability min(1, w_i w_j / sum w).
 * Pairs are visited with geometric skipping over weight-sorted nodes.
 */
inline Graph gen_random_powerlaw(std::size_t n, double exponent, std::uint64_t seed) {
  detail::require(exponent > 2.0, "random power-law requires exponent > 2");
  detail::require(n >= 1, "random power-law requires n >= 1");
  Rng rng(seed);
  std::vector<double> weight(n);
  for (auto& w : weight) w = static_cast<double>(sample_zipf(rng, exponent));
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return weight[a] > weight[b]; });
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wu = weight[order[i]];
    std::size_t j = i + 1;
    double p = std::min(wu * weight[order[j]] / total, 1.0);
    while (j < n && p > 0.0) {
      if (p < 1.0) {
        const double r = 1.0 - uniform01(rng);
        const double skip = std::floor(std::log(r) / std::log1p(-p));
        if (skip >= static_cast<double>(n)) break;
        j += static_cast<std::size_t>(skip);
      }
      if (j >= n) break;
      const double q = std::min(wu * weight[order[j]] / total, 1.0);
      if (uniform01(rng) < q / p) edges.push_back({order[i], order[j]});
      p = q;
      ++j;
    }
  }
  return Graph(n, std::move(edges));
}

/// Ring lattice with k neighbors per node, each lattice edge rewired with
/// probability `rewire` to a uniform endpoint that avoids self-loops and
/// duplicates.
inline Graph gen_ws(std::size_t n, std::size_t k, double rewire, std::uint64_t seed) {
  detail::require(k % 2 == 0, "WS requires even k");
  detail::require(k < n, "WS requires k < n");
  detail::require(rewire >= 0.0 && rewire <= 1.0, "WS requires 0 <= rewire <= 1");
  Rng rng(seed);
  std::vector<std::vector<NodeId>> adj(n);
  auto link = [&](NodeId a, NodeId b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  auto unlink = [&](NodeId a, NodeId b) {
    std::erase(adj[a], b);
    std::erase(adj[b], a);
  };
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) link(u, static_cast<NodeId>((u + j) % n));
  }
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (NodeId u = 0; u < n; ++u) {
      const auto v = static_cast<NodeId>((u + j) % n);
      if (uniform01(rng) >= rewire) continue;
      if (adj[u].size() >= n - 1 || !detail::contains(adj[u], v)) continue;
      NodeId w = pick(rng);
      while (w == u || detail::contains(adj[u], w)) w = pick(rng);
      unlink(u, v);
      link(u, w);
    }
  }
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (auto v : adj[u]) {
      if (u < v) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

/**
 * Uniformish random k-regular simple graph by incremental stub pairing:
 * stubs are shuffled and paired, colliding pairs go back into the pool,
 * and the whole attempt restarts when no valid pairing remains.
 */
inline Graph gen_regular(std::size_t n, std::size_t k, std::uint64_t seed) {
  detail::require((n * k) % 2 == 0, "regular graph requires n*k even");
  detail::require(k < n, "regular graph requires k < n");
  Rng rng(seed);
  if (k == 0) return Graph(n, {});

  auto suitable = [](const std::set<Edge>& edges, const std::map<NodeId, std::size_t>& potential) {
    if (potential.empty()) return true;
    for (auto it1 = potential.begin(); it1 != potential.end(); ++it1) {
      for (auto it2 = potential.begin(); it2 != it1; ++it2) {
        if (!edges.contains(Edge{it2->first, it1->first})) return true;
      }
    }
    return false;
  };

  for (;;) {
    std::set<Edge> edges;
    std::vector<NodeId> stubs;
    stubs.reserve(n * k);
    for (std::size_t r = 0; r < k; ++r) {
      for (NodeId v = 0; v < n; ++v) stubs.push_back(v);
    }
    bool ok = true;
    while (!stubs.empty()) {
      std::map<NodeId, std::size_t> potential;
      std::shuffle(stubs.begin(), stubs.end(), rng);
      for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
        NodeId a = stubs[i];
        NodeId b = stubs[i + 1];
        if (a > b) std::swap(a, b);
        if (a != b && !edges.contains(Edge{a, b})) {
          edges.insert(Edge{a, b});
        } else {
          ++potential[a];
          ++potential[b];
        }
      }
      if (!suitable(edges, potential)) {
        ok = false;
        break;
      }
      stubs.clear();
      for (const auto& [node, count] : potential) stubs.insert(stubs.end(), count, node);
    }
    if (ok) return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
  }
}

inline Graph generate(const ModelSpec& spec) {
  const auto n = spec.n_nodes;
  return std::visit(
      [&](const auto& p) -> Graph {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BaParams>) {
          return gen_ba(n, p.k, spec.seed);
        } else if constexpr (std::is_same_v<P, CopyingParams>) {
          return gen_copying(n, p.k, p.copy_beta, spec.seed);
        } else if constexpr (std::is_same_v<P, ErParams>) {
          return gen_er(n, p.density, spec.seed);
        } else if constexpr (std::is_same_v<P, ForestFireParams>) {
          return gen_forest_fire(n, p.p, p.backward_ratio, spec.seed);
        } else if constexpr (std::is_same_v<P, KroneckerParams>) {
          return gen_kronecker(p.initiator, p.k_power, spec.seed);
        } else if constexpr (std::is_same_v<P, PowerLawParams>) {
          return gen_random_powerlaw(n, p.exponent, spec.seed);
        } else if constexpr (std::is_same_v<P, WsParams>) {
          return gen_ws(n, p.k, p.rewire, spec.seed);
        } else {
          return gen_regular(n, p.k, spec.seed);
        }
      },
      spec.params);
}

/// Node-count range for sampled specs.
struct SizeRange {
  std::size_t min_nodes = 1000;
  std::size_t max_nodes = 5000;
};

/**
 * Draws a model spec uniformly from the artificial-corpus parameter ranges:
 * BA and CM k in [1, 10], CM beta in (0, 1), ER density in [0.002, 0.005],
 * FF p in [0, 0.3] with backward ratio 0.32, KG initiator entries in
 * [0.7,0.9] x [0.5,0.7] x [0.4,0.6] x [0.2,0.4], RP exponent in (2.5, 3),
 * WS even k in [2, 10] with rewiring 0.5, RG k in [2, 10].
 *
 * KG sizes are the powers of two inside the node range (the nearest one if
 * none fits); RG bumps n by one when n*k would be odd.
 */
inline ModelSpec sample_params(Model model, Rng& rng, const SizeRange& range = {}) {
  if (range.min_nodes < 12 || range.max_nodes < range.min_nodes) {
    throw ParameterError("node range must satisfy 12 <= min <= max");
  }
  auto uniform_int = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  auto uniform_real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  // (lo, hi) open interval.
  auto open_real = [&](double lo, double hi) {
    double x;
    do x = uniform_real(lo, hi);
    while (x <= lo);
    return x;
  };

  ModelSpec spec;
  spec.model = model;
  spec.n_nodes = uniform_int(range.min_nodes, range.max_nodes);
  switch (model) {
    case Model::BA:
      spec.params = BaParams{uniform_int(1, 10)};
      break;
    case Model::CM: {
      const auto k = uniform_int(1, 10);
      spec.params = CopyingParams{k, open_real(0.0, 1.0)};
      break;
    }
    case Model::ER:
      spec.params = ErParams{uniform_real(0.002, std::nextafter(0.005, 1.0))};
      break;
    case Model::FF:
      spec.params = ForestFireParams{uniform_real(0.0, std::nextafter(0.3, 1.0)), 0.32};
      break;
    case Model::KG: {
      std::vector<int> powers;
      for (int k = 1; k <= 20; ++k) {
        const std::size_t size = std::size_t{1} << k;
        if (size >= range.min_nodes && size <= range.max_nodes) powers.push_back(k);
      }
      if (powers.empty()) {
        const double mid = 0.5 * static_cast<double>(range.min_nodes + range.max_nodes);
        powers.push_back(std::clamp(static_cast<int>(std::lround(std::log2(mid))), 1, 20));
      }
      KroneckerParams kp;
      kp.k_power = powers[uniform_int(0, powers.size() - 1)];
      kp.initiator = {uniform_real(0.7, 0.9), uniform_real(0.5, 0.7), uniform_real(0.4, 0.6), uniform_real(0.2, 0.4)};
      spec.params = kp;
      spec.n_nodes = std::size_t{1} << kp.k_power;
      break;
    }
    case Model::RP:
      spec.params = PowerLawParams{open_real(2.5, 3.0)};
      break;
    case Model::WS:
      spec.params = WsParams{2 * uniform_int(1, 5), 0.5};
      break;
    case Model::RG: {
      const auto k = uniform_int(2, 10);
      if ((spec.n_nodes * k) % 2 != 0) spec.n_nodes += spec.n_nodes < range.max_nodes ? 1 : -1;
      spec.params = RegularParams{k};
      break;
    }
  }
  spec.seed = rng();
  return spec;
}

inline std::string instance_name(const std::string& label, std::size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return label + "_" + digits;
}

/**
 * per_model instances of each model, labeled by model name. Instance i of
 * model m draws its spec from a stream seeded by (master_seed, m, i), so
 * the corpus does not depend on thread count or on which other models are
 * requested.
 */
inline std::vector<LabeledGraph> generate_dataset(const std::vector<Model>& models, std::size_t per_model,
                                                  std::uint64_t master_seed, const SizeRange& range = {},
                                                  unsigned threads = 0) {
  std::vector<LabeledGraph> out(models.size() * per_model);
  parallel_for(
      out.size(),
      [&](std::size_t slot) {
        const Model model = models[slot / per_model];
        const std::size_t index = slot % per_model;
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(model) + 1, index));
        auto spec = sample_params(model, rng, range);
        const auto label = model_name(model);
        out[slot] = LabeledGraph{generate(spec), label, instance_name(label, index), spec};
      },
      threads);
  return out;
}

}  // namespace ddqc
