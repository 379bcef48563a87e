// Report documents: the typed results produced by the command front end,
// their JSON round-trip serialization, and CSV summaries.  All output is
// byte-stable for fixed inputs: sorted keys, LF endings, 17-significant-digit
// floats, and an empty timestamp unless one is requested explicitly.
#pragma once

#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/errors.hpp"
#include "starcalc/json_io.hpp"
#include "starcalc/starbody.hpp"
#include "starcalc/verify.hpp"

namespace starcalc {

/// Description of the quadrature rule a report was produced with.
struct RuleMetadata {
  int dim = 2;
  std::string kind = "circle_trapezoid";
  int resolution = 0;
  std::uint64_t seed = 0;  ///< Monte Carlo rules only; 0 otherwise
  std::uint64_t nodes = 0;
};

inline std::string rule_kind_label(SphereRule::Kind kind) {
  switch (kind) {
    case SphereRule::Kind::kCircleTrapezoid: return "circle_trapezoid";
    case SphereRule::Kind::kSphereGaussProduct: return "sphere_gauss_product";
    case SphereRule::Kind::kMonteCarlo: return "monte_carlo";
  }
  throw ConfigError("unknown rule kind");
}

inline RuleMetadata describe_rule(const SphereRule& rule) {
  RuleMetadata meta;
  meta.dim = rule.dim();
  meta.kind = rule_kind_label(rule.kind());
  meta.resolution = rule.resolution();
  meta.seed = rule.seed();
  meta.nodes = rule.size();
  return meta;
}

inline Json to_json(const RuleMetadata& meta) {
  return Json{{"dim", meta.dim},
              {"kind", meta.kind},
              {"nodes", meta.nodes},
              {"resolution", meta.resolution},
              {"seed", meta.seed}};
}

inline RuleMetadata rule_metadata_from_json(const Json& j) {
  RuleMetadata meta;
  meta.dim = detail::int_field(j, "dim", "/rule");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw SchemaError("/rule/kind", "kind must be a string");
  }
  meta.kind = j.at("kind").get<std::string>();
  meta.resolution = detail::int_field(j, "resolution", "/rule");
  meta.seed = j.value("seed", std::uint64_t{0});
  meta.nodes = j.value("nodes", std::uint64_t{0});
  return meta;
}

inline Json to_json(const InequalityReport& r) {
  return Json{{"case", r.case_id},
              {"equality_case", r.equality_case},
              {"lhs", r.lhs},
              {"margin", r.margin},
              {"pass", r.pass},
              {"rhs", r.rhs},
              {"scale", r.scale},
              {"tolerance", r.tolerance}};
}

inline InequalityReport inequality_report_from_json(const Json& j) {
  InequalityReport r;
  if (!j.contains("case") || !j.at("case").is_string()) {
    throw SchemaError("/case", "case must be a string");
  }
  r.case_id = j.at("case").get<std::string>();
  r.lhs = detail::number_field(j, "lhs", "");
  r.rhs = detail::number_field(j, "rhs", "");
  r.margin = detail::number_field(j, "margin", "");
  r.tolerance = detail::number_field(j, "tolerance", "");
  r.scale = detail::number_field(j, "scale", "");
  r.pass = j.value("pass", false);
  r.equality_case = j.value("equality_case", false);
  return r;
}

inline Json to_json(const LimitReport& r) {
  return Json{{"extrapolated", r.extrapolated},
              {"gap_tolerance", r.gap_tolerance},
              {"ladder", detail::number_array_json(r.ladder)},
              {"limit_scale", r.limit_scale},
              {"pass", r.pass},
              {"quotients", detail::number_array_json(r.quotients)},
              {"radial_gaps", detail::number_array_json(r.radial_gaps)},
              {"relative_error", r.relative_error},
              {"relative_tolerance", r.relative_tolerance},
              {"target", r.target}};
}

inline LimitReport limit_report_from_json(const Json& j) {
  LimitReport r;
  r.ladder = detail::number_array_field(j, "ladder", "");
  r.quotients = detail::number_array_field(j, "quotients", "");
  r.radial_gaps = detail::number_array_field(j, "radial_gaps", "");
  r.extrapolated = detail::number_field(j, "extrapolated", "");
  r.target = detail::number_field(j, "target", "");
  r.relative_error = detail::number_field(j, "relative_error", "");
  r.limit_scale = detail::number_field(j, "limit_scale", "");
  r.relative_tolerance = detail::number_field(j, "relative_tolerance", "");
  r.gap_tolerance = detail::number_field(j, "gap_tolerance", "");
  r.pass = j.value("pass", false);
  return r;
}

/// Everything a command run produces, in serializable form.
struct ReportDocument {
  std::string command;    ///< echo of the effective invocation
  std::string timestamp;  ///< empty by default; set only on request
  std::uint64_t seed = 0;
  RuleMetadata rule;
  Json results = Json::array();
};

inline Json to_json(const ReportDocument& doc) {
  return Json{{"command", doc.command},
              {"results", doc.results},
              {"rule", to_json(doc.rule)},
              {"seed", doc.seed},
              {"timestamp", doc.timestamp}};
}

inline ReportDocument report_document_from_json(const Json& j) {
  ReportDocument doc;
  if (!j.is_object()) throw SchemaError("", "report document must be a JSON object");
  if (!j.contains("command") || !j.at("command").is_string()) {
    throw SchemaError("/command", "command must be a string");
  }
  doc.command = j.at("command").get<std::string>();
  doc.timestamp = j.value("timestamp", std::string());
  doc.seed = j.value("seed", std::uint64_t{0});
  if (!j.contains("rule")) throw SchemaError("", "missing required field \"rule\"");
  doc.rule = rule_metadata_from_json(j.at("rule"));
  if (!j.contains("results") || !j.at("results").is_array()) {
    throw SchemaError("/results", "results must be an array");
  }
  doc.results = j.at("results");
  return doc;
}

inline std::string serialize_report(const ReportDocument& doc) {
  return serialize_json(to_json(doc));
}

inline ReportDocument parse_report(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("", std::string("not well-formed JSON: ") + e.what());
  }
  return report_document_from_json(doc);
}

/// UTC timestamp (ISO 8601, second precision) for opt-in stamping.
inline std::string current_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// CSV summaries.  Comma separated, header row, LF endings, %.17g floats.

inline std::string inequality_csv(const std::vector<InequalityReport>& reports) {
  std::string out = "case,margin,pass\n";
  for (const auto& r : reports) {
    out += r.case_id + "," + format_double(r.margin) + "," + (r.pass ? "true" : "false") +
           "\n";
  }
  return out;
}

/// Limit reports fold into the same summary shape; the margin column holds
/// minus the relative extrapolation error (0 is ideal, more negative worse).
inline std::string limit_csv(const std::vector<LimitReport>& reports) {
  std::string out = "case,margin,pass\n";
  for (const auto& r : reports) {
    out += std::string("LIMIT,") + format_double(-r.relative_error) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

/// One row per (case, margin, pass) triple taken from a mixed results array.
inline std::string results_csv(const Json& results) {
  std::string out = "case,margin,pass\n";
  for (const auto& entry : results) {
    std::string case_id;
    double margin = 0.0;
    if (entry.contains("case")) {
      case_id = entry.at("case").get<std::string>();
      margin = entry.at("margin").get<double>();
    } else if (entry.contains("ladder")) {
      case_id = "LIMIT";
      margin = -entry.at("relative_error").get<double>();
    } else {
      continue;  // compute/sweep entries have no pass semantics
    }
    const bool pass = entry.value("pass", false);
    out += case_id + "," + format_double(margin) + "," + (pass ? "true" : "false") + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// File helpers.

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for file: " + path);
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for file: " + path);
}

}  // namespace starcalc
