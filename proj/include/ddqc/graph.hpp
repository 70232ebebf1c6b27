#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ddqc/error.hpp"

namespace ddqc {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Simple undirected graph. Edges are stored once, smaller endpoint first,
 * sorted and without duplicates or self-loops. Node ids range over
 * [0, node_count); nodes without edges are isolated and have degree 0.
 */
class Graph {
 public:
  Graph() = default;

  /// Normalizes an arbitrary edge list: orients pairs, drops self-loops and
  /// duplicates. Throws ParameterError if an endpoint is >= node_count.
  Graph(std::size_t node_count, std::vector<Edge> edges) : node_count_(node_count) {
    for (auto& e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.v >= node_count_) {
        throw ParameterError("edge endpoint " + std::to_string(e.v) + " >= node count " +
                             std::to_string(node_count_));
      }
    }
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool has_edge(NodeId a, NodeId b) const {
    if (a > b) std::swap(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
};

struct LoadOptions {
  // Reciprocal arcs (u v and v u) collapse into one undirected edge. When
  // false the input is required to be undirected already and a reciprocal
  // pair is a parse error.
  bool treat_directed_as_undirected = true;
  // Remap ids densely in order of first appearance; drops phantom isolates
  // that gaps in the id space would otherwise create.
  bool compact_ids = false;
  // Lower bound for node_count, for files whose trailing isolated nodes are
  // known from elsewhere (e.g. a manifest). Ignored when compact_ids is set.
  std::size_t min_node_count = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\v\f");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline NodeId parse_node_id(std::string_view token, std::size_t line) {
  if (!token.empty() && token.front() == '-') {
    throw ParseError("negative node id '" + std::string(token) + "'", line);
  }
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec == std::errc::result_out_of_range ||
      (ec == std::errc() && ptr == end && value >= std::numeric_limits<NodeId>::max())) {
    throw ParseError("node id '" + std::string(token) + "' out of range", line);
  }
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ParseError("invalid node id '" + std::string(token) + "'", line);
  }
  return static_cast<NodeId>(value);
}

}  // namespace detail

/// Reads a whitespace-delimited edge list. Lines starting with '#' or '%'
/// and blank lines are skipped; every other line must hold exactly two
/// non-negative integers.
inline Graph load_edge_list(std::istream& in, const LoadOptions& options = {}) {
  std::vector<Edge> edges;
  std::unordered_map<NodeId, NodeId> remap;
  std::set<Edge> seen_arcs;
  std::size_t node_count = 0;
  std::string line;
  std::size_t line_no = 0;

  auto map_id = [&](NodeId id) -> NodeId {
    if (!options.compact_ids) return id;
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(remap.size()));
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto content = detail::trim(line);
    if (content.empty() || content.front() == '#' || content.front() == '%') continue;
    const auto tokens = detail::split_ws(content);
    if (tokens.size() != 2) {
      throw ParseError("expected 2 tokens, found " + std::to_string(tokens.size()), line_no);
    }
    NodeId a = map_id(detail::parse_node_id(tokens[0], line_no));
    NodeId b = map_id(detail::parse_node_id(tokens[1], line_no));
    if (!options.treat_directed_as_undirected && a != b) {
      if (seen_arcs.contains(Edge{b, a}) && !seen_arcs.contains(Edge{a, b})) {
        throw ParseError("reciprocal arc in undirected input", line_no);
      }
      seen_arcs.insert(Edge{a, b});
    }
    node_count = std::max<std::size_t>(node_count, std::size_t{std::max(a, b)} + 1);
    edges.push_back(Edge{a, b});
  }
  if (in.bad()) throw IoError("read failure");
  if (!options.compact_ids) node_count = std::max(node_count, options.min_node_count);
  return Graph(node_count, std::move(edges));
}

inline Graph load_edge_list_file(const std::string& path, const LoadOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return load_edge_list(in, options);
}

/// One "u v" line per edge, preceded by a comment recording the node count.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> degrees(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    ++degrees[e.u];
    ++degrees[e.v];
  }
  return degrees;
}

}  // namespace ddqc
