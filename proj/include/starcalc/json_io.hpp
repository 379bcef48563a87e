// JSON input/output: body and gauge spec parsing with JSON-path error
// reporting, normalized round-trippable documents, and a canonical serializer
// (sorted keys, LF line endings, floats at 17 significant digits).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "starcalc/additions.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/starbody.hpp"

namespace starcalc {

using Json = nlohmann::json;

/// Shortest-width fixed formatting: %.17g guarantees round-trip exactness
/// for doubles and byte-stable output.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) {
    throw IoError("cannot serialize a non-finite number");
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

namespace detail {

inline void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char raw : s) {
    const unsigned char c = static_cast<unsigned char>(raw);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(raw);
        }
    }
  }
  out.push_back('"');
}

inline void write_json_value(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float: out += format_double(j.get<double>()); break;
    case Json::value_t::string: append_escaped(out, j.get<std::string>()); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        write_json_value(out, j[i], depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        write_json_value(out, it.value(), depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      break;
    }
    default:
      throw IoError("cannot serialize this JSON value type");
  }
}

}  // namespace detail

/// Canonical serialization: keys sorted (nlohmann object order), two-space
/// indentation, LF endings, trailing newline.
inline std::string serialize_json(const Json& j) {
  std::string out;
  detail::write_json_value(out, j, 0);
  out += "\n";
  return out;
}

namespace detail {

inline double number_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw SchemaError(path, "missing required field \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) throw SchemaError(path + "/" + key, key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path + "/" + key, key + " must be finite");
  return d;
}

inline int int_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw SchemaError(path, "missing required field \"" + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) {
    throw SchemaError(path + "/" + key, key + " must be an integer");
  }
  return v.get<int>();
}

inline std::string type_tag(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object with a \"type\" tag");
  if (!j.contains("type")) throw SchemaError(path, "missing required field \"type\"");
  const Json& t = j.at("type");
  if (!t.is_string()) throw SchemaError(path + "/type", "type must be a string");
  return t.get<std::string>();
}

inline std::vector<double> number_array_field(const Json& j, const std::string& key,
                                              const std::string& path) {
  const Json& v = j.at(key);
  if (!v.is_array()) throw SchemaError(path + "/" + key, key + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw SchemaError(path + "/" + key + "/" + std::to_string(i),
                        key + " entries must be numbers");
    }
    const double d = v[i].get<double>();
    if (!std::isfinite(d)) {
      throw SchemaError(path + "/" + key + "/" + std::to_string(i),
                        key + " entries must be finite");
    }
    out.push_back(d);
  }
  return out;
}

inline Json number_array_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

constexpr int kMaxRefDepth = 32;

}  // namespace detail

/// Builds a single-variable gauge from a spec fragment.  A bare string
/// resolves through the document's named gauges.  `norm` (if non-null)
/// receives the canonical fragment, with names left in place.
inline OrliczFunction1 build_phi1(const Json& j, const std::map<std::string, Json>& named,
                                  const std::string& path, Json* norm = nullptr,
                                  int depth = 0) {
  if (depth > detail::kMaxRefDepth) {
    throw SchemaError(path, "gauge references nest too deeply (cycle?)");
  }
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    auto it = named.find(name);
    if (it == named.end()) {
      throw SchemaError(path, "unknown gauge name \"" + name + "\"");
    }
    OrliczFunction1 phi = build_phi1(it->second, named, path, nullptr, depth + 1);
    if (norm) *norm = name;
    return phi;
  }
  const std::string tag = detail::type_tag(j, path);
  if (tag == "power") {
    const double q = detail::number_field(j, "q", path);
    if (!(q >= 1.0)) throw SchemaError(path + "/q", "q must be at least 1");
    if (norm) *norm = Json{{"q", q}, {"type", "power"}};
    return OrliczFunction1::power(q);
  }
  if (tag == "neglog") {
    bool normalized = true;
    if (j.contains("normalized")) {
      if (!j.at("normalized").is_boolean()) {
        throw SchemaError(path + "/normalized", "normalized must be a boolean");
      }
      normalized = j.at("normalized").get<bool>();
    }
    if (norm) *norm = Json{{"normalized", normalized}, {"type", "neglog"}};
    return OrliczFunction1::neglog(normalized);
  }
  if (tag == "sum") {
    throw SchemaError(path, "a sum gauge is not valid where a one-variable gauge is expected");
  }
  throw SchemaError(path, "unknown type tag \"" + tag + "\" for a gauge");
}

/// Builds the multi-variable gauge for a sum with `arity` summands.  Accepts
/// a "sum" fragment with matching term count, or a one-variable fragment
/// replicated across all slots with unit weights.
inline OrliczFunctionM build_gauge(const Json& j, std::size_t arity,
                                   const std::map<std::string, Json>& named,
                                   const std::string& path, Json* norm = nullptr,
                                   int depth = 0) {
  if (depth > detail::kMaxRefDepth) {
    throw SchemaError(path, "gauge references nest too deeply (cycle?)");
  }
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    auto it = named.find(name);
    if (it == named.end()) {
      throw SchemaError(path, "unknown gauge name \"" + name + "\"");
    }
    OrliczFunctionM gauge = build_gauge(it->second, arity, named, path, nullptr, depth + 1);
    if (norm) *norm = name;
    return gauge;
  }
  const std::string tag = detail::type_tag(j, path);
  if (tag == "sum") {
    if (!j.contains("terms")) throw SchemaError(path, "missing required field \"terms\"");
    const Json& terms = j.at("terms");
    if (!terms.is_array() || terms.empty()) {
      throw SchemaError(path + "/terms", "terms must be a non-empty array");
    }
    if (terms.size() != arity) {
      throw SchemaError(path + "/terms",
                        "gauge arity " + std::to_string(terms.size()) +
                            " does not match the " + std::to_string(arity) + " summands");
    }
    std::vector<OrliczFunctionM::Term> built;
    Json norm_terms = Json::array();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string term_path = path + "/terms/" + std::to_string(i);
      const Json& term = terms[i];
      if (!term.is_object() || !term.contains("phi")) {
        throw SchemaError(term_path, "each term needs a \"phi\" field");
      }
      double weight = 1.0;
      if (term.contains("weight")) {
        weight = detail::number_field(term, "weight", term_path);
        if (weight < 0.0) throw SchemaError(term_path + "/weight", "weight must be non-negative");
      }
      Json phi_norm;
      OrliczFunction1 phi =
          build_phi1(term.at("phi"), named, term_path + "/phi", &phi_norm, depth);
      built.push_back({std::move(phi), weight});
      norm_terms.push_back(Json{{"phi", phi_norm}, {"weight", weight}});
    }
    if (norm) *norm = Json{{"terms", norm_terms}, {"type", "sum"}};
    return OrliczFunctionM::sum(std::move(built));
  }
  // One-variable fragment: replicate into every slot.
  Json phi_norm;
  OrliczFunction1 phi = build_phi1(j, named, path, &phi_norm, depth);
  std::vector<OrliczFunctionM::Term> built;
  built.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i) built.push_back({phi, 1.0});
  if (norm) *norm = phi_norm;
  return OrliczFunctionM::sum(std::move(built));
}

/// Builds a star body from a spec tree.  `default_dim` supplies the
/// dimension of leaf nodes that do not state one.
inline StarBody build_body(const Json& j, int default_dim,
                           const std::map<std::string, Json>& named, const std::string& path,
                           Json* norm = nullptr) {
  const std::string tag = detail::type_tag(j, path);
  const auto leaf_dim = [&]() -> int {
    if (!j.contains("dim")) return default_dim;
    const int d = detail::int_field(j, "dim", path);
    if (d < 2) throw SchemaError(path + "/dim", "dim must be an integer >= 2");
    return d;
  };

  if (tag == "ball") {
    const double r = detail::number_field(j, "r", path);
    if (!(r > 0.0)) throw SchemaError(path + "/r", "r must be positive");
    const int dim = leaf_dim();
    if (norm) *norm = Json{{"dim", dim}, {"r", r}, {"type", "ball"}};
    return StarBody::ball(dim, r);
  }

  if (tag == "lp_ball") {
    const double p = detail::number_field(j, "p", path);
    if (!(p > 0.0)) throw SchemaError(path + "/p", "p must be positive");
    double scale = 1.0;
    if (j.contains("scale")) {
      scale = detail::number_field(j, "scale", path);
      if (!(scale > 0.0)) throw SchemaError(path + "/scale", "scale must be positive");
    }
    const int dim = leaf_dim();
    if (norm) *norm = Json{{"dim", dim}, {"p", p}, {"scale", scale}, {"type", "lp_ball"}};
    return StarBody::lp_ball(dim, p, scale);
  }

  if (tag == "dilate") {
    const double c = detail::number_field(j, "c", path);
    if (!(c > 0.0)) throw SchemaError(path + "/c", "c must be positive");
    if (!j.contains("body")) throw SchemaError(path, "missing required field \"body\"");
    Json body_norm;
    StarBody inner = build_body(j.at("body"), default_dim, named, path + "/body", &body_norm);
    if (norm) *norm = Json{{"body", body_norm}, {"c", c}, {"type", "dilate"}};
    return StarBody::dilate(c, inner);
  }

  if (tag == "linear_image") {
    if (!j.contains("body")) throw SchemaError(path, "missing required field \"body\"");
    Json body_norm;
    StarBody inner = build_body(j.at("body"), default_dim, named, path + "/body", &body_norm);
    if (!j.contains("matrix")) throw SchemaError(path, "missing required field \"matrix\"");
    const Json& rows = j.at("matrix");
    if (!rows.is_array() || rows.empty()) {
      throw SchemaError(path + "/matrix", "matrix must be a non-empty array of rows");
    }
    if (rows.size() != static_cast<std::size_t>(inner.dim())) {
      throw SchemaError(path + "/matrix",
                        "matrix dimension mismatch: " + std::to_string(rows.size()) +
                            " rows for a body of dimension " + std::to_string(inner.dim()));
    }
    std::vector<std::vector<double>> entries;
    Json norm_rows = Json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string row_path = path + "/matrix/" + std::to_string(r);
      if (!rows[r].is_array() || rows[r].size() != rows.size()) {
        throw SchemaError(row_path, "matrix rows must all have length equal to the row count");
      }
      std::vector<double> row;
      for (std::size_t cidx = 0; cidx < rows[r].size(); ++cidx) {
        if (!rows[r][cidx].is_number()) {
          throw SchemaError(row_path + "/" + std::to_string(cidx),
                            "matrix entries must be numbers");
        }
        const double e = rows[r][cidx].get<double>();
        if (!std::isfinite(e)) {
          throw SchemaError(row_path + "/" + std::to_string(cidx),
                            "matrix entries must be finite");
        }
        row.push_back(e);
      }
      norm_rows.push_back(detail::number_array_json(row));
      entries.push_back(std::move(row));
    }
    Matrix map(entries);
    try {
      StarBody built = StarBody::linear_image(map, inner);
      if (norm) {
        *norm = Json{{"body", body_norm}, {"matrix", norm_rows}, {"type", "linear_image"}};
      }
      return built;
    } catch (const MatrixError& e) {
      throw SchemaError(path + "/matrix", e.what());
    }
  }

  if (tag == "radial_trig_poly") {
    const double a0 = detail::number_field(j, "a0", path);
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;
    if (j.contains("cos")) cos_coeffs = detail::number_array_field(j, "cos", path);
    if (j.contains("sin")) sin_coeffs = detail::number_array_field(j, "sin", path);
    try {
      StarBody built = StarBody::radial_trig_poly(a0, cos_coeffs, sin_coeffs);
      if (norm) {
        *norm = Json{{"a0", a0},
                     {"cos", detail::number_array_json(cos_coeffs)},
                     {"sin", detail::number_array_json(sin_coeffs)},
                     {"type", "radial_trig_poly"}};
      }
      return built;
    } catch (const DegenerateBodyError& e) {
      throw SchemaError(path, e.what());
    }
  }

  if (tag == "orlicz_sum") {
    if (!j.contains("bodies")) throw SchemaError(path, "missing required field \"bodies\"");
    const Json& bodies = j.at("bodies");
    if (!bodies.is_array() || bodies.empty()) {
      throw SchemaError(path + "/bodies", "bodies must be a non-empty array");
    }
    std::vector<StarBody> built;
    Json norm_bodies = Json::array();
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      Json body_norm;
      built.push_back(build_body(bodies[i], default_dim, named,
                                 path + "/bodies/" + std::to_string(i), &body_norm));
      norm_bodies.push_back(body_norm);
      if (built.back().dim() != built.front().dim()) {
        throw SchemaError(path + "/bodies/" + std::to_string(i),
                          "dimension mismatch: summands must share one dimension");
      }
    }
    double k = 1.0;
    if (j.contains("k")) {
      k = detail::number_field(j, "k", path);
      if (!(k > 0.0)) throw SchemaError(path + "/k", "k must be positive");
    }
    std::vector<double> ks;
    if (j.contains("ks")) {
      ks = detail::number_array_field(j, "ks", path);
      if (ks.size() != built.size()) {
        throw SchemaError(path + "/ks", "ks must list one constant per body");
      }
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(ks[i] > 0.0)) {
          throw SchemaError(path + "/ks/" + std::to_string(i), "ks entries must be positive");
        }
      }
    } else {
      ks.assign(built.size(), 1.0);
    }
    if (!j.contains("phi")) throw SchemaError(path, "missing required field \"phi\"");
    Json phi_norm;
    OrliczFunctionM gauge =
        build_gauge(j.at("phi"), built.size(), named, path + "/phi", &phi_norm);
    if (norm) {
      *norm = Json{{"bodies", norm_bodies},
                   {"k", k},
                   {"ks", detail::number_array_json(ks)},
                   {"phi", phi_norm},
                   {"type", "orlicz_sum"}};
    }
    return orlicz_sum({std::move(built), std::move(gauge), k, std::move(ks)});
  }

  throw SchemaError(path, "unknown type tag \"" + tag + "\" for a body");
}

/// Parsed and validated input document: a body tree, optional named gauges,
/// and optional quadrature settings.  `normalized` round-trips bytewise
/// through serialize_spec / parse_spec.
struct BodySpecDocument {
  int version = 1;
  int dim = 2;
  bool has_resolution = false;
  int resolution = 0;
  std::map<std::string, Json> named_phis;
  StarBody body;
  Json normalized;
};

inline BodySpecDocument parse_spec_json(const Json& doc) {
  if (!doc.is_object()) {
    throw SchemaError("", "document must be a JSON object");
  }
  // A bare body tree (object with a "type" tag) is accepted directly.
  const bool bare = doc.contains("type");
  const Json& body_spec = bare ? doc : [&]() -> const Json& {
    if (!doc.contains("body")) throw SchemaError("", "missing required field \"body\"");
    return doc.at("body");
  }();

  int version = 1;
  if (!bare && doc.contains("version")) {
    version = detail::int_field(doc, "version", "");
    if (version != 1) throw SchemaError("/version", "unsupported document version");
  }

  std::map<std::string, Json> named;
  if (!bare && doc.contains("phis")) {
    const Json& phis = doc.at("phis");
    if (!phis.is_object()) throw SchemaError("/phis", "phis must be an object");
    // First record raw fragments so references between names resolve, then
    // validate and normalize each one.
    for (auto it = phis.begin(); it != phis.end(); ++it) {
      named[it.key()] = it.value();
    }
    for (auto it = phis.begin(); it != phis.end(); ++it) {
      const std::string phi_path = "/phis/" + it.key();
      Json norm;
      if (it.value().is_object() && it.value().contains("type") &&
          it.value().at("type").is_string() &&
          it.value().at("type").get<std::string>() == "sum") {
        // Arity is fixed by the declared term count.
        const std::size_t arity =
            it.value().contains("terms") && it.value().at("terms").is_array()
                ? it.value().at("terms").size()
                : 0;
        if (arity == 0) throw SchemaError(phi_path + "/terms", "terms must be a non-empty array");
        build_gauge(it.value(), arity, named, phi_path, &norm);
      } else {
        build_phi1(it.value(), named, phi_path, &norm);
      }
      named[it.key()] = norm;
    }
  }

  int default_dim = 2;
  bool explicit_dim = false;
  if (!bare && doc.contains("dim")) {
    default_dim = detail::int_field(doc, "dim", "");
    if (default_dim < 2) throw SchemaError("/dim", "dim must be an integer >= 2");
    explicit_dim = true;
  }

  Json body_norm;
  StarBody body =
      build_body(body_spec, default_dim, named, bare ? "" : "/body", &body_norm);
  if (explicit_dim && body.dim() != default_dim) {
    throw SchemaError("/body", "dimension mismatch: body has dimension " +
                                   std::to_string(body.dim()) + " but the document says " +
                                   std::to_string(default_dim));
  }

  BodySpecDocument out{version, body.dim(), false, 0, std::move(named), std::move(body),
                       Json()};
  if (!bare && doc.contains("resolution")) {
    const int res = detail::int_field(doc, "resolution", "");
    if (res < 8) throw SchemaError("/resolution", "resolution must be an integer >= 8");
    out.has_resolution = true;
    out.resolution = res;
  }

  Json normalized = Json{{"body", body_norm}, {"dim", out.dim}, {"version", out.version}};
  if (!out.named_phis.empty()) {
    Json phis_norm = Json::object();
    for (const auto& [name, fragment] : out.named_phis) phis_norm[name] = fragment;
    normalized["phis"] = phis_norm;
  }
  if (out.has_resolution) normalized["resolution"] = out.resolution;
  out.normalized = std::move(normalized);
  return out;
}

/// Parses a body spec document (or bare body tree) from JSON text.
inline BodySpecDocument parse_spec(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("not well-formed JSON: ") + e.what());
  }
  return parse_spec_json(doc);
}

inline std::string serialize_spec(const BodySpecDocument& doc) {
  return serialize_json(doc.normalized);
}

/// Depth of a body spec tree: leaves count 1, composites add 1.
inline int body_tree_depth(const Json& body_spec) {
  if (!body_spec.is_object()) return 0;
  int deepest = 0;
  if (body_spec.contains("body")) {
    deepest = std::max(deepest, body_tree_depth(body_spec.at("body")));
  }
  if (body_spec.contains("bodies") && body_spec.at("bodies").is_array()) {
    for (const auto& child : body_spec.at("bodies")) {
      deepest = std::max(deepest, body_tree_depth(child));
    }
  }
  return deepest + 1;
}

/// Parses a standalone gauge fragment (no named references available).
inline OrliczFunction1 parse_phi1(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("not well-formed JSON: ") + e.what());
  }
  return build_phi1(doc, {}, "");
}

}  // namespace starcalc
