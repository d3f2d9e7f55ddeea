#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "horoklein/cone.hpp"
#include "horoklein/errors.hpp"
#include "horoklein/tolerances.hpp"

namespace horoklein {

// Output JSON keeps insertion order so vectors print with ascending indices
// and files are byte-stable.
using Json = nlohmann::ordered_json;

inline Json to_json(const SparseVector& x) {
  Json obj = Json::object();
  for (const auto& e : x.entries()) obj[std::to_string(e.index)] = e.value;
  return obj;
}

inline Json to_json(const ConeVector& u) {
  Json obj = Json::object();
  obj["lambda"] = u.lambda;
  obj["spatial"] = to_json(u.spatial);
  return obj;
}

inline SparseVector sparse_from_json(const Json& j, const std::string& context) {
  if (!j.is_object()) {
    throw InputError(context + ": expected a JSON object mapping index strings to numbers");
  }
  std::vector<SparseVector::Entry> entries;
  entries.reserve(j.size());
  for (const auto& [key, value] : j.items()) {
    std::size_t index = 0;
    try {
      std::size_t pos = 0;
      if (key.empty() || !std::isdigit(static_cast<unsigned char>(key[0]))) {
        throw std::invalid_argument(key);
      }
      index = std::stoull(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw InputError(context + ": key \"" + key + "\" is not a non-negative integer index");
    }
    if (!value.is_number()) {
      throw InputError(context + ": value at index " + key + " is not a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
      throw InputError(context + ": non-finite value at index " + key);
    }
    entries.push_back({index, v});
  }
  return SparseVector{std::move(entries)};
}

inline ConeVector cone_from_json(const Json& j, const std::string& context) {
  if (!j.is_object() || !j.contains("lambda") || !j.contains("spatial")) {
    throw InputError(context + ": cone vector needs {\"lambda\": number, \"spatial\": {...}}");
  }
  if (!j["lambda"].is_number()) throw InputError(context + ": lambda is not a number");
  const double lambda = j["lambda"].get<double>();
  if (!std::isfinite(lambda)) throw InputError(context + ": lambda is not finite");
  for (const auto& [key, _] : j.items()) {
    if (key != "lambda" && key != "spatial") {
      throw InputError(context + ": unexpected field \"" + key + "\" in cone vector");
    }
  }
  return {lambda, sparse_from_json(j["spatial"], context + ".spatial")};
}

using ParsedVector = std::variant<SparseVector, ConeVector>;

inline Json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": malformed JSON: " + e.what());
  }
  return j;
}

/// A bare object of index/number pairs parses as a SparseVector; an object
/// with a "lambda" field parses as a ConeVector.
inline ParsedVector parse_vector_file(const std::string& path) {
  const Json j = parse_json_file(path);
  if (j.is_object() && j.contains("lambda")) return cone_from_json(j, path);
  return sparse_from_json(j, path);
}

/// Any vector file as a point of the cone: bare spatial objects get
/// lambda = 1. Interiority is the consuming operation's domain check.
inline ConeVector load_cone_point(const std::string& path) {
  ParsedVector parsed = parse_vector_file(path);
  if (std::holds_alternative<ConeVector>(parsed)) return std::get<ConeVector>(parsed);
  return ConeVector{1.0, std::get<SparseVector>(parsed)};
}

inline DiscPoint load_disc_point(const std::string& path,
                                 double interior_margin = kInteriorMargin) {
  ParsedVector parsed = parse_vector_file(path);
  SparseVector spatial;
  if (std::holds_alternative<ConeVector>(parsed)) {
    const ConeVector& u = std::get<ConeVector>(parsed);
    if (u.lambda != 1.0) {
      throw InputError(path + ": disc point requires lambda = 1");
    }
    spatial = u.spatial;
  } else {
    spatial = std::get<SparseVector>(parsed);
  }
  try {
    return DiscPoint(std::move(spatial), interior_margin);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline SparseVector load_sparse_vector(const std::string& path) {
  ParsedVector parsed = parse_vector_file(path);
  if (!std::holds_alternative<SparseVector>(parsed)) {
    throw InputError(path + ": expected a bare sparse vector object");
  }
  return std::get<SparseVector>(parsed);
}

// --------------------------------------------------------------------------
// JSONL term files: one disc point per line, bare spatial form.
// --------------------------------------------------------------------------

inline std::vector<DiscPoint> load_terms_jsonl(const std::string& path,
                                               double interior_margin = kInteriorMargin) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  std::vector<DiscPoint> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ":" + std::to_string(lineno) + ": malformed JSON: " + e.what());
    }
    const std::string context = path + ":" + std::to_string(lineno);
    try {
      terms.emplace_back(sparse_from_json(j, context), interior_margin);
    } catch (const InputError& e) {
      throw InputError(std::string(e.what()).find(context) != std::string::npos
                           ? e.what()
                           : context + ": " + e.what());
    }
  }
  if (terms.empty()) throw InputError(path + ": no terms found");
  return terms;
}

inline std::string terms_to_jsonl(const std::vector<DiscPoint>& terms) {
  std::ostringstream out;
  for (const auto& t : terms) out << to_json(t.spatial()).dump() << "\n";
  return out.str();
}

// --------------------------------------------------------------------------
// Tolerance profiles
// --------------------------------------------------------------------------

inline ToleranceProfile tolerance_profile_from_json(const Json& j,
                                                    const std::string& context) {
  ToleranceProfile p;
  if (!j.is_object()) throw InputError(context + ": tolerance profile must be an object");
  auto get = [&](const char* key, double& slot) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw InputError(context + ": " + key + " is not a number");
    slot = j[key].get<double>();
    if (!(slot > 0.0)) throw InputError(context + ": " + key + " must be positive");
  };
  get("cone_tol", p.cone_tol);
  get("interior_margin", p.interior_margin);
  get("clamp_window", p.clamp_window);
  get("oracle_tol", p.oracle_tol);
  get("settle_tol", p.settle_tol);
  get("gauge_agreement_rel", p.gauge_agreement_rel);
  get("metric_agreement", p.metric_agreement);
  get("cross_ratio_agreement", p.cross_ratio_agreement);
  get("triangle_slack", p.triangle_slack);
  get("scale_invariance", p.scale_invariance);
  get("radial_formula", p.radial_formula);
  get("horo_base_normalization", p.horo_base_normalization);
  get("busemann_reduction", p.busemann_reduction);
  get("lipschitz_slack", p.lipschitz_slack);
  get("horo_scale_invariance", p.horo_scale_invariance);
  if (j.contains("oracle_max_iter")) {
    if (!j["oracle_max_iter"].is_number_unsigned()) {
      throw InputError(context + ": oracle_max_iter must be a non-negative integer");
    }
    p.oracle_max_iter = j["oracle_max_iter"].get<std::size_t>();
  }
  static const char* known[] = {
      "cone_tol", "interior_margin", "clamp_window", "oracle_tol", "oracle_max_iter",
      "settle_tol", "gauge_agreement_rel", "metric_agreement", "cross_ratio_agreement",
      "triangle_slack", "scale_invariance", "radial_formula", "horo_base_normalization",
      "busemann_reduction", "lipschitz_slack", "horo_scale_invariance"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) throw InputError(context + ": unknown tolerance field \"" + key + "\"");
  }
  return p;
}

inline ToleranceProfile load_tolerance_profile(const std::string& path) {
  return tolerance_profile_from_json(parse_json_file(path), path);
}

}  // namespace horoklein
