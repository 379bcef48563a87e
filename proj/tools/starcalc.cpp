// starcalc command-line front end.
//
// Subcommands:
//   compute   evaluate one functional on bodies given as JSON spec files
//   verify    run the inequality / structure / limit / equality suites
//   sweep     evaluate a functional over a parameter grid
//   plotdata  emit polar samples (theta, rho) of a planar body as CSV
//
// Exit codes: 0 all reports pass (or nothing to pass), 1 some report failed,
// 2 configuration/precondition/schema errors, 3 solver failures.
// Output is byte-stable for identical command, seed, and resolution.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "starcalc/starcalc.hpp"

namespace {

using starcalc::BodySpecDocument;
using starcalc::Json;
using starcalc::ReportDocument;
using starcalc::SphereRule;
using starcalc::StarBody;

struct OutputOptions {
  std::string format = "json";
  std::string out_path;      // empty: stdout
  std::string summary_path;  // verify only: CSV summary destination
  bool stamp = false;
};

int default_resolution(int dim) { return dim == 2 ? 1024 : 64; }

/// Resolution priority: explicit flag, then the document's value, then the
/// per-dimension default.
int pick_resolution(int flag_value, const BodySpecDocument* doc, int dim) {
  if (flag_value > 0) return flag_value;
  if (doc && doc->has_resolution) return doc->resolution;
  return default_resolution(dim);
}

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) joined += " ";
    joined += argv[i];
  }
  return joined;
}

BodySpecDocument load_body(const std::string& path) {
  return starcalc::parse_spec(starcalc::read_text_file(path));
}

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    starcalc::write_text_file(out_path, text);
  }
}

void emit_document(const ReportDocument& doc, const OutputOptions& output) {
  if (output.format == "csv") {
    deliver(starcalc::results_csv(doc.results), output.out_path);
  } else {
    deliver(starcalc::serialize_report(doc), output.out_path);
  }
  if (!output.summary_path.empty()) {
    starcalc::write_text_file(output.summary_path, starcalc::results_csv(doc.results));
  }
}

bool all_reports_pass(const Json& results) {
  for (const auto& entry : results) {
    if (entry.contains("pass") && !entry.at("pass").get<bool>()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  std::string functional;
  std::string body_path;
  std::string second_path;
  std::string phi_path;
  int index = 1;
  double p = 2.0;
  double k1 = 1.0;
  double k2 = 1.0;
  int resolution = 0;
  OutputOptions output;
};

int run_compute(const ComputeArgs& args, const std::string& command_echo) {
  const BodySpecDocument body_doc = load_body(args.body_path);
  const int dim = body_doc.dim;
  const int resolution = pick_resolution(args.resolution, &body_doc, dim);
  const SphereRule rule = starcalc::build_quadrature(dim, resolution);

  Json inputs = Json{{"body", body_doc.normalized.at("body")}};
  double value = 0.0;

  if (args.functional == "volume") {
    value = starcalc::volume(body_doc.body, rule);
  } else {
    if (args.second_path.empty()) {
      throw starcalc::ConfigError("functional \"" + args.functional +
                                  "\" needs --second <spec.json>");
    }
    const BodySpecDocument second_doc = load_body(args.second_path);
    if (second_doc.dim != dim) {
      throw starcalc::ConfigError("body dimensions disagree: " + std::to_string(dim) +
                                  " vs " + std::to_string(second_doc.dim));
    }
    inputs["second"] = second_doc.normalized.at("body");
    if (args.functional == "dual_mixed_volume_i") {
      inputs["i"] = args.index;
      value = starcalc::dual_mixed_volume_i(body_doc.body, second_doc.body, args.index, rule);
    } else if (args.functional == "lp_dual_mixed_volume") {
      inputs["p"] = args.p;
      value = starcalc::lp_dual_mixed_volume(body_doc.body, second_doc.body, args.p, rule);
    } else if (args.functional == "orlicz_dual_mixed_volume" ||
               args.functional == "projection_norm") {
      if (args.phi_path.empty()) {
        throw starcalc::ConfigError("functional \"" + args.functional +
                                    "\" needs --phi <gauge.json>");
      }
      Json phi_norm;
      const starcalc::OrliczFunction1 phi = starcalc::build_phi1(
          Json::parse(starcalc::read_text_file(args.phi_path)), body_doc.named_phis, "/phi",
          &phi_norm);
      inputs["k1"] = args.k1;
      inputs["k2"] = args.k2;
      inputs["phi"] = phi_norm;
      if (args.functional == "orlicz_dual_mixed_volume") {
        value = starcalc::orlicz_dual_mixed_volume(body_doc.body, second_doc.body, phi,
                                                   args.k1, args.k2, rule);
      } else {
        value = starcalc::orlicz_dual_projection_norm(body_doc.body, second_doc.body, phi,
                                                      args.k1, args.k2, rule);
      }
    } else {
      throw starcalc::ConfigError("unknown functional \"" + args.functional + "\"");
    }
  }

  ReportDocument doc;
  doc.command = command_echo;
  doc.timestamp = args.output.stamp ? starcalc::current_timestamp() : "";
  doc.rule = starcalc::describe_rule(rule);
  doc.results.push_back(Json{{"functional", args.functional},
                             {"inputs", inputs},
                             {"rule_resolution", resolution},
                             {"value", value}});
  if (args.output.format == "csv") {
    deliver("functional,value\n" + args.functional + "," + starcalc::format_double(value) +
                "\n",
            args.output.out_path);
  } else {
    deliver(starcalc::serialize_report(doc), args.output.out_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite = "all";
  std::string only_case;
  int dim = 2;
  int resolution = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int instances = 20;
  OutputOptions output;
};

int run_verify(const VerifyArgs& args, const std::string& command_echo) {
  if (args.suite != "all" && args.suite != "inequalities" && args.suite != "structure" &&
      args.suite != "limits" && args.suite != "equality") {
    throw starcalc::ConfigError(
        "unknown suite \"" + args.suite +
        "\" (expected all, inequalities, structure, limits, or equality)");
  }
  if (args.instances < 1) throw starcalc::ConfigError("--instances must be at least 1");
  const int resolution = pick_resolution(args.resolution, nullptr, args.dim);
  const SphereRule rule = starcalc::build_quadrature(args.dim, resolution);
  starcalc::SuiteConfig cfg{args.seed, args.instances, args.tolerance};

  Json results = Json::array();
  const auto add_inequality = [&](const std::vector<starcalc::InequalityReport>& reports) {
    for (const auto& r : reports) {
      if (!args.only_case.empty() && r.case_id != args.only_case) continue;
      results.push_back(starcalc::to_json(r));
    }
  };

  if (args.suite == "all" || args.suite == "inequalities") {
    add_inequality(starcalc::run_inequality_suite(rule, cfg));
  }
  if (args.suite == "all" || args.suite == "structure") {
    add_inequality(starcalc::run_structure_suite(rule, cfg));
  }
  if (args.suite == "all" || args.suite == "equality") {
    add_inequality(starcalc::run_dilate_equality_suite(rule, cfg));
  }
  if (args.suite == "all" || args.suite == "limits") {
    if (args.only_case.empty() || args.only_case == "LIMIT") {
      for (const auto& r : starcalc::run_limit_suite(rule, cfg)) {
        results.push_back(starcalc::to_json(r));
      }
    }
  }

  ReportDocument doc;
  doc.command = command_echo;
  doc.timestamp = args.output.stamp ? starcalc::current_timestamp() : "";
  doc.seed = args.seed;
  doc.rule = starcalc::describe_rule(rule);
  doc.results = std::move(results);
  emit_document(doc, args.output);
  return all_reports_pass(doc.results) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string functional;
  std::string body_path;
  std::string second_path;
  std::string phi_path;
  std::vector<double> grid;
  double k = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  int resolution = 0;
  OutputOptions output;
};

int run_sweep(const SweepArgs& args, const std::string& command_echo) {
  if (args.grid.empty()) throw starcalc::ConfigError("--grid needs at least one value");
  const BodySpecDocument body_doc = load_body(args.body_path);
  if (args.second_path.empty()) {
    throw starcalc::ConfigError("sweep needs --second <spec.json>");
  }
  const BodySpecDocument second_doc = load_body(args.second_path);
  if (second_doc.dim != body_doc.dim) {
    throw starcalc::ConfigError("body dimensions disagree: " + std::to_string(body_doc.dim) +
                                " vs " + std::to_string(second_doc.dim));
  }
  const int resolution = pick_resolution(args.resolution, &body_doc, body_doc.dim);
  const SphereRule rule = starcalc::build_quadrature(body_doc.dim, resolution);

  std::vector<double> values;
  values.reserve(args.grid.size());
  if (args.functional == "comb_volume") {
    for (double t : args.grid) {
      if (t < 0.0) throw starcalc::ConfigError("comb_volume grid values must be >= 0");
      const StarBody comb =
          starcalc::radial_minkowski_comb(body_doc.body, second_doc.body, 1.0, t);
      values.push_back(starcalc::volume(comb, rule));
    }
  } else if (args.functional == "limit_quotient") {
    if (args.phi_path.empty()) {
      throw starcalc::ConfigError("limit_quotient needs --phi <gauge.json>");
    }
    const starcalc::OrliczFunction1 phi = starcalc::build_phi1(
        Json::parse(starcalc::read_text_file(args.phi_path)), body_doc.named_phis, "/phi");
    const double vol_first = starcalc::volume(body_doc.body, rule);
    const double derivative = phi.left_derivative(1.0);
    starcalc::SolveOptions tight;
    tight.rel_tol = 0.0;
    for (double eps : args.grid) {
      if (!(eps > 0.0) || eps > 1.0) {
        throw starcalc::ConfigError("limit_quotient grid values must lie in (0, 1]");
      }
      const StarBody sum =
          starcalc::orlicz_linear_comb(body_doc.body, second_doc.body, phi, phi, 1.0, eps,
                                       args.k, args.k1, args.k2, tight);
      values.push_back(derivative / args.k1 *
                       (args.k * starcalc::volume(sum, rule) - args.k1 * vol_first) / eps);
    }
  } else {
    throw starcalc::ConfigError("unknown sweep functional \"" + args.functional +
                                "\" (expected comb_volume or limit_quotient)");
  }

  if (args.output.format == "csv") {
    std::string csv = "parameter,value\n";
    for (std::size_t i = 0; i < args.grid.size(); ++i) {
      csv += starcalc::format_double(args.grid[i]) + "," +
             starcalc::format_double(values[i]) + "\n";
    }
    deliver(csv, args.output.out_path);
    return 0;
  }
  ReportDocument doc;
  doc.command = command_echo;
  doc.timestamp = args.output.stamp ? starcalc::current_timestamp() : "";
  doc.rule = starcalc::describe_rule(rule);
  for (std::size_t i = 0; i < args.grid.size(); ++i) {
    doc.results.push_back(Json{{"functional", args.functional},
                               {"parameter", args.grid[i]},
                               {"value", values[i]}});
  }
  deliver(starcalc::serialize_report(doc), args.output.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// plotdata

struct PlotArgs {
  std::string body_path;
  int resolution = 0;
  std::string out_path;
};

int run_plotdata(const PlotArgs& args) {
  const BodySpecDocument body_doc = load_body(args.body_path);
  if (body_doc.dim != 2) {
    throw starcalc::ConfigError("plotdata supports planar bodies only (dimension 2)");
  }
  const int resolution = pick_resolution(args.resolution, &body_doc, 2);
  const SphereRule rule = starcalc::build_quadrature(2, resolution);
  auto rho = body_doc.body.samples(rule);
  std::string csv = "theta,rho\n";
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double theta = 2.0 * starcalc::kPi * static_cast<double>(i) / rule.size();
    csv += starcalc::format_double(theta) + "," + starcalc::format_double((*rho)[i]) + "\n";
  }
  deliver(csv, args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"starcalc: star-body functionals, Orlicz radial sums, and theorem checks"};
  app.require_subcommand(1);

  ComputeArgs compute;
  CLI::App* compute_cmd =
      app.add_subcommand("compute", "Evaluate one functional on JSON body specs");
  compute_cmd
      ->add_option("functional", compute.functional,
                   "volume | dual_mixed_volume_i | lp_dual_mixed_volume | "
                   "orlicz_dual_mixed_volume | projection_norm")
      ->required();
  compute_cmd->add_option("--body", compute.body_path, "first body spec file")->required();
  compute_cmd->add_option("--second", compute.second_path, "second body spec file");
  compute_cmd->add_option("--phi", compute.phi_path, "gauge spec file");
  compute_cmd->add_option("--i", compute.index, "index for dual_mixed_volume_i");
  compute_cmd->add_option("--p", compute.p, "exponent for lp_dual_mixed_volume");
  compute_cmd->add_option("--k1", compute.k1, "first constant");
  compute_cmd->add_option("--k2", compute.k2, "second constant");
  compute_cmd->add_option("--resolution", compute.resolution, "quadrature resolution");
  compute_cmd->add_option("--format", compute.output.format, "json (default) or csv");
  compute_cmd->add_option("--out", compute.output.out_path, "output file (default stdout)");
  compute_cmd->add_flag("--stamp", compute.output.stamp, "include a UTC timestamp");

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the theorem check suites");
  verify_cmd->add_option("--suite", verify.suite,
                         "all | inequalities | structure | limits | equality");
  verify_cmd->add_option("--case", verify.only_case, "restrict to one case id");
  verify_cmd->add_option("--dim", verify.dim, "ambient dimension (default 2)");
  verify_cmd->add_option("--resolution", verify.resolution, "quadrature resolution");
  verify_cmd->add_option("--seed", verify.seed, "master random seed (default 0)");
  verify_cmd->add_option("--tolerance", verify.tolerance, "margin tolerance (default 1e-9)");
  verify_cmd->add_option("--instances", verify.instances, "instances per case (default 20)");
  verify_cmd->add_option("--format", verify.output.format, "json (default) or csv");
  verify_cmd->add_option("--out", verify.output.out_path, "output file (default stdout)");
  verify_cmd->add_option("--summary", verify.output.summary_path, "CSV summary file");
  verify_cmd->add_flag("--stamp", verify.output.stamp, "include a UTC timestamp");

  SweepArgs sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate a functional over a parameter grid");
  sweep_cmd->add_option("functional", sweep.functional, "comb_volume | limit_quotient")
      ->required();
  sweep_cmd->add_option("--body", sweep.body_path, "first body spec file")->required();
  sweep_cmd->add_option("--second", sweep.second_path, "second body spec file")->required();
  sweep_cmd->add_option("--phi", sweep.phi_path, "gauge spec file (limit_quotient)");
  sweep_cmd->add_option("--grid", sweep.grid, "parameter values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--k", sweep.k, "sum constant");
  sweep_cmd->add_option("--k1", sweep.k1, "first constant");
  sweep_cmd->add_option("--k2", sweep.k2, "second constant");
  sweep_cmd->add_option("--resolution", sweep.resolution, "quadrature resolution");
  sweep_cmd->add_option("--format", sweep.output.format, "json (default) or csv");
  sweep_cmd->add_option("--out", sweep.output.out_path, "output file (default stdout)");
  sweep_cmd->add_flag("--stamp", sweep.output.stamp, "include a UTC timestamp");

  PlotArgs plot;
  CLI::App* plot_cmd =
      app.add_subcommand("plotdata", "Emit polar samples (theta, rho) as CSV");
  plot_cmd->add_option("--body", plot.body_path, "body spec file")->required();
  plot_cmd->add_option("--resolution", plot.resolution, "quadrature resolution");
  plot_cmd->add_option("--out", plot.out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command_echo = join_args(argc, argv);
  try {
    if (*compute_cmd) return run_compute(compute, command_echo);
    if (*verify_cmd) return run_verify(verify, command_echo);
    if (*sweep_cmd) return run_sweep(sweep, command_echo);
    if (*plot_cmd) return run_plotdata(plot);
    std::fputs("no subcommand given\n", stderr);
    return 2;
  } catch (const starcalc::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const starcalc::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 2;
  }
}
