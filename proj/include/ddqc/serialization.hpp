#pragma once

#include <charconv>
#include <string>
#include <variant>

#include <json.hpp>

#include "ddqc/baselines.hpp"
#include "ddqc/degree_distribution.hpp"
#include "ddqc/error.hpp"
#include "ddqc/generators.hpp"
#include "ddqc/quantification.hpp"

namespace ddqc {

using Json = nlohmann::ordered_json;

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline Json to_json(const DegreeDistribution& dd) {
  Json j;
  j["n_nodes"] = dd.n_nodes();
  j["min_degree"] = dd.min_degree();
  j["max_degree"] = dd.max_degree();
  j["mean"] = dd.mean();
  j["std"] = dd.stddev();
  j["support"] = dd.support();
  j["probs"] = dd.probs();
  return j;
}

// degree,probability rows.
inline std::string to_csv(const DegreeDistribution& dd) {
  std::string out = "degree,probability\n";
  for (std::size_t i = 0; i < dd.support().size(); ++i) {
    out += std::to_string(dd.support()[i]) + "," + format_number(dd.probs()[i]) + "\n";
  }
  return out;
}

inline Json to_json(const QuantifiedDistribution& q) {
  return Json{{"alpha", q.alpha}, {"beta", q.beta}, {"idp", q.idp}};
}

inline QuantifiedDistribution quantified_from_json(const Json& j) {
  try {
    QuantifiedDistribution q{j.at("alpha").get<double>(), j.at("beta").get<int>(), j.at("idp").get<std::vector<double>>()};
    if (q.beta < 0 || q.idp.size() != 4 * (std::size_t{1} << q.beta)) {
      throw ParseError("idp length does not match beta");
    }
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid quantification document: ") + e.what());
  }
}

/// Header of the flat quantification row: alpha,beta,idp_0..idp_{4L-1}.
inline std::string quantified_csv_header(int beta) {
  std::string out = "alpha,beta";
  const std::size_t count = 4 * (std::size_t{1} << beta);
  for (std::size_t i = 0; i < count; ++i) out += ",idp_" + std::to_string(i);
  return out;
}

inline std::string to_csv_row(const QuantifiedDistribution& q) {
  std::string out = format_number(q.alpha) + "," + std::to_string(q.beta);
  for (double x : q.idp) out += "," + format_number(x);
  return out;
}

inline Json to_json(const PercentileVector& v) { return Json(v.bins); }

inline Json to_json(const ModelParams& params) {
  return std::visit(
      [](const auto& p) -> Json {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, BaParams>) {
          return Json{{"k", p.k}};
        } else if constexpr (std::is_same_v<P, CopyingParams>) {
          return Json{{"k", p.k}, {"beta", p.copy_beta}};
        } else if constexpr (std::is_same_v<P, ErParams>) {
          return Json{{"density", p.density}};
        } else if constexpr (std::is_same_v<P, ForestFireParams>) {
          return Json{{"p", p.p}, {"backward_ratio", p.backward_ratio}};
        } else if constexpr (std::is_same_v<P, KroneckerParams>) {
          return Json{{"initiator", p.initiator}, {"k_power", p.k_power}};
        } else if constexpr (std::is_same_v<P, PowerLawParams>) {
          return Json{{"gamma", p.exponent}};
        } else if constexpr (std::is_same_v<P, WsParams>) {
          return Json{{"k", p.k}, {"rewire", p.rewire}};
        } else {
          return Json{{"k", p.k}};
        }
      },
      params);
}

inline ModelParams model_params_from_json(Model model, const Json& j) {
  try {
    switch (model) {
      case Model::BA: return BaParams{j.at("k").get<std::size_t>()};
      case Model::CM: return CopyingParams{j.at("k").get<std::size_t>(), j.at("beta").get<double>()};
      case Model::ER: return ErParams{j.at("density").get<double>()};
      case Model::FF: return ForestFireParams{j.at("p").get<double>(), j.value("backward_ratio", 0.32)};
      case Model::KG: return KroneckerParams{j.at("initiator").get<std::array<double, 4>>(), j.at("k_power").get<int>()};
      case Model::RP: return PowerLawParams{j.at("gamma").get<double>()};
      case Model::WS: return WsParams{j.at("k").get<std::size_t>(), j.value("rewire", 0.5)};
      case Model::RG: return RegularParams{j.at("k").get<std::size_t>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid parameters for " + model_name(model) + ": " + e.what());
  }
  throw ParseError("unknown model");
}

}  // namespace ddqc
