#pragma once

// JSON input documents, preset names, and JSON renderings of results.
// Rationals are always written as "p/q" strings.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "conicdiv/conic_cells.hpp"
#include "conicdiv/cone.hpp"
#include "conicdiv/divisor_theory.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/multiplicity_hk.hpp"
#include "conicdiv/presets.hpp"
#include <nlohmann/json.hpp>

namespace conicdiv {

using Json = nlohmann::json;

struct MonoidInput {
  std::string name;
  std::size_t dim = 0;
  std::optional<std::vector<IntVector>> generators;
  std::optional<std::vector<IntVector>> support_forms;
  std::optional<std::string> preset;
};

namespace detail {

inline std::vector<long> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long v = std::stol(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(what + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw InputError(what + ": empty list");
  return out;
}

inline Integer parse_integer(const std::string& text, const std::string& where) {
  Integer z;
  if (text.empty() || z.set_str(text, 10) != 0)
    throw InputError("field '" + where + "' must be an integer, got '" + text + "'");
  return z;
}

inline std::vector<IntVector> parse_vectors(const Json& node, const std::string& field, std::size_t dim) {
  if (!node.is_array()) throw InputError("field '" + field + "' must be an array of integer vectors");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const auto& v = node[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!v.is_array()) throw InputError("field '" + where + "' must be an array");
    if (v.size() != dim)
      throw InputError("field '" + where + "' has length " + std::to_string(v.size()) + ", expected dim = " +
                       std::to_string(dim));
    IntVector iv;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_number_integer())
        iv.emplace_back(v[j].get<long>());
      else if (v[j].is_string())
        iv.push_back(parse_integer(v[j].get<std::string>(), where + "[" + std::to_string(j) + "]"));
      else
        throw InputError("field '" + where + "[" + std::to_string(j) + "]' must be an integer");
    }
    out.push_back(std::move(iv));
  }
  if (out.size() < dim)
    throw InputError("field '" + field + "' needs at least dim = " + std::to_string(dim) + " vectors");
  return out;
}

}  // namespace detail

/// Recognizes "orthant:d", "figure1", "segre:d1,...,dk", "veronese:d,c".
inline bool is_preset_name(const std::string& s) {
  return s == "figure1" || s.rfind("orthant:", 0) == 0 || s.rfind("segre:", 0) == 0 || s.rfind("veronese:", 0) == 0;
}

inline MonoidInput preset_input(const std::string& preset) {
  MonoidInput in;
  in.name = preset;
  in.preset = preset;
  Cone cone = [&]() -> Cone {
    if (preset == "figure1") return two_ray_cone();
    const auto colon = preset.find(':');
    if (colon == std::string::npos) throw InputError("unknown preset '" + preset + "'");
    const std::string kind = preset.substr(0, colon);
    const auto args = detail::parse_int_list(preset.substr(colon + 1), "preset '" + preset + "'");
    if (kind == "orthant") {
      if (args.size() != 1 || args[0] < 1) throw InputError("orthant preset needs one positive dimension");
      return orthant(static_cast<std::size_t>(args[0]));
    }
    if (kind == "segre") {
      std::vector<int> dims(args.begin(), args.end());
      return segre_monoid(dims).cone;
    }
    if (kind == "veronese") {
      if (args.size() != 2 || args[0] < 1) throw InputError("veronese preset needs 'veronese:d,c'");
      return veronese(static_cast<std::size_t>(args[0]), args[1]);
    }
    throw InputError("unknown preset '" + preset + "'");
  }();
  in.dim = cone.dim();
  if (preset == "figure1" || preset.rfind("orthant:", 0) == 0)
    in.generators = cone.generators();
  else
    in.support_forms = cone.support_forms();
  return in;
}

/// Parses a JSON monoid document:
///   {"name": ..., "dim": d, "generators": [[...], ...]}
///   {"name": ..., "dim": d, "support_forms": [[...], ...]}
///   {"preset": "segre:3,3,3"}
inline MonoidInput parse_input(const std::string& document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("input document must be a JSON object");
  if (doc.contains("preset")) {
    if (!doc["preset"].is_string()) throw InputError("field 'preset' must be a string");
    MonoidInput in = preset_input(doc["preset"].get<std::string>());
    if (doc.contains("name") && doc["name"].is_string()) in.name = doc["name"].get<std::string>();
    return in;
  }
  MonoidInput in;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError("field 'name' must be a string");
    in.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("dim")) throw InputError("missing field 'dim'");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1)
    throw InputError("field 'dim' must be a positive integer");
  in.dim = doc["dim"].get<std::size_t>();
  const bool has_g = doc.contains("generators");
  const bool has_f = doc.contains("support_forms");
  if (has_g == has_f) throw InputError("exactly one of 'generators' or 'support_forms' must be given");
  if (has_g) in.generators = detail::parse_vectors(doc["generators"], "generators", in.dim);
  if (has_f) in.support_forms = detail::parse_vectors(doc["support_forms"], "support_forms", in.dim);
  return in;
}

inline Cone build_cone(const MonoidInput& in) {
  if (in.generators) return Cone::from_generators(*in.generators, in.dim);
  if (in.support_forms) return Cone::from_support_forms(*in.support_forms, in.dim);
  throw InputError("monoid input has neither generators nor support forms");
}

// ---------------------------------------------------------------------------
// JSON output

inline Json to_json(const Rational& q) { return to_fraction_string(q); }

inline Json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline Json to_json(const ClassLabel& l) { return Json{{"torsion", to_json(l.torsion)}, {"free", to_json(l.free)}}; }

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return detail::parse_integer(j.get<std::string>(), "integer");
  throw InputError("expected an integer");
}

inline ClassLabel label_from_json(const Json& j) {
  ClassLabel l;
  for (const auto& x : j.at("torsion")) l.torsion.push_back(integer_from_json(x));
  for (const auto& x : j.at("free")) l.free.push_back(integer_from_json(x));
  return l;
}

inline Json to_json(const QuasiPolynomial& q) {
  Json coeffs = Json::array();
  for (const auto& c : q.coefficients()) coeffs.push_back(to_json(c));
  return Json{{"degree", q.degree()}, {"period", q.period()}, {"coefficients", coeffs}};
}

inline QuasiPolynomial quasi_polynomial_from_json(const Json& j) {
  std::vector<RatVector> coeffs;
  for (const auto& row : j.at("coefficients")) {
    RatVector r;
    for (const auto& x : row) r.push_back(parse_fraction(x.get<std::string>()));
    coeffs.push_back(std::move(r));
  }
  return QuasiPolynomial(j.at("degree").get<std::size_t>(), std::move(coeffs));
}

}  // namespace conicdiv
