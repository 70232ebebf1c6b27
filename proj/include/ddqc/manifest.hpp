#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ddqc/error.hpp"
#include "ddqc/evaluation.hpp"
#include "ddqc/generators.hpp"
#include "ddqc/graph.hpp"
#include "ddqc/serialization.hpp"

namespace ddqc {

/**
 * One corpus member. Manifests are CSV files with header
 * path,label,model,n,seed,params_json[,timestamp]. Only path and label are
 * required per row; model/n/seed/params_json are empty for user-supplied
 * graphs. Relative paths resolve against the manifest's directory.
 */
struct ManifestEntry {
  std::string path;
  std::string label;
  std::string model;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::string params_json;
  std::optional<std::string> timestamp;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  bool has_timestamp = false;
};

namespace csv {

inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// RFC 4180 fields of one physical line (no embedded newlines).
inline std::vector<std::string> split(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_no);
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace csv

inline Manifest read_manifest(std::istream& in) {
  static const std::vector<std::string> kColumns = {"path", "label", "model", "n", "seed", "params_json"};
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("manifest is empty");
  const auto header = csv::split(line, line_no);
  Manifest manifest;
  if (header.size() == kColumns.size() + 1 && header.back() == "timestamp") {
    manifest.has_timestamp = true;
  } else if (header.size() != kColumns.size()) {
    throw ParseError("manifest header must be path,label,model,n,seed,params_json[,timestamp]", line_no);
  }
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    if (header[c] != kColumns[c]) throw ParseError("unexpected manifest column '" + header[c] + "'", line_no);
  }

  auto parse_uint = [&](const std::string& s, const char* what) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(std::string("invalid ") + what + " '" + s + "'", line_no);
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto f = csv::split(line, line_no);
    if (f.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(f.size()),
                       line_no);
    }
    ManifestEntry e;
    e.path = f[0];
    e.label = f[1];
    e.model = f[2];
    if (e.path.empty()) throw ParseError("empty path", line_no);
    if (e.label.empty()) throw ParseError("empty label", line_no);
    if (!f[3].empty()) e.n = parse_uint(f[3], "n");
    if (!f[4].empty()) e.seed = parse_uint(f[4], "seed");
    e.params_json = f[5];
    if (manifest.has_timestamp && !f[6].empty()) e.timestamp = f[6];
    manifest.entries.push_back(std::move(e));
  }
  return manifest;
}

inline Manifest read_manifest_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest '" + path.string() + "'");
  return read_manifest(in);
}

inline void write_manifest(std::ostream& out, const Manifest& manifest) {
  out << "path,label,model,n,seed,params_json" << (manifest.has_timestamp ? ",timestamp" : "") << '\n';
  for (const auto& e : manifest.entries) {
    out << csv::quote(e.path) << ',' << csv::quote(e.label) << ',' << csv::quote(e.model) << ','
        << (e.n ? std::to_string(*e.n) : "") << ',' << (e.seed ? std::to_string(*e.seed) : "") << ','
        << csv::quote(e.params_json);
    if (manifest.has_timestamp) out << ',' << csv::quote(e.timestamp.value_or(""));
    out << '\n';
  }
}

inline ManifestEntry manifest_entry_for(const LabeledGraph& item, const std::string& path) {
  ManifestEntry e;
  e.path = path;
  e.label = item.label;
  e.n = item.graph.node_count();
  if (item.spec) {
    e.model = model_name(item.spec->model);
    e.seed = item.spec->seed;
    e.params_json = to_json(item.spec->params).dump();
  }
  return e;
}

/// Writes <instance_id>.edges per item and manifest.csv into `dir`.
inline Manifest write_dataset(const std::filesystem::path& dir, std::span<const LabeledGraph> items) {
  std::filesystem::create_directories(dir);
  Manifest manifest;
  for (const auto& item : items) {
    const std::string file = item.instance_id + ".edges";
    std::ofstream out(dir / file);
    if (!out) throw IoError("cannot write '" + (dir / file).string() + "'");
    write_edge_list(out, item.graph);
    manifest.entries.push_back(manifest_entry_for(item, file));
  }
  std::ofstream out(dir / "manifest.csv");
  if (!out) throw IoError("cannot write manifest in '" + dir.string() + "'");
  write_manifest(out, manifest);
  return manifest;
}

/// Loads every graph of a manifest as a labeled degree distribution; ids are
/// the manifest paths. A row's n, when present, restores trailing isolated
/// nodes that an edge list cannot express.
inline std::vector<LabeledDistribution> load_corpus(const Manifest& manifest, const std::filesystem::path& base_dir,
                                                    unsigned threads = 0) {
  std::vector<std::optional<LabeledDistribution>> loaded(manifest.entries.size());
  parallel_for(
      manifest.entries.size(),
      [&](std::size_t i) {
        const auto& e = manifest.entries[i];
        std::filesystem::path p(e.path);
        if (p.is_relative()) p = base_dir / p;
        LoadOptions options;
        options.min_node_count = e.n.value_or(0);
        const auto g = load_edge_list_file(p.string(), options);
        if (e.n && g.node_count() != *e.n) {
          throw ParseError("'" + e.path + "' references nodes beyond n = " + std::to_string(*e.n));
        }
        loaded[i] = LabeledDistribution{e.path, e.label, DegreeDistribution::from_graph(g)};
      },
      threads);
  std::vector<LabeledDistribution> out;
  out.reserve(loaded.size());
  for (auto& item : loaded) out.push_back(std::move(*item));
  return out;
}

}  // namespace ddqc
