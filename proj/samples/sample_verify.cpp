// Walkthrough: run individual theorem checks and a small seeded suite, then
// print the reports.  A non-negative margin means the claimed inequality
// held on that instance.
#include <cstdio>

#include "starcalc/starcalc.hpp"

namespace {

void print_report(const starcalc::InequalityReport& r) {
  std::printf("%-16s margin % .3e  scale %8.3f  %s%s\n", r.case_id.c_str(), r.margin,
              r.scale, r.pass ? "pass" : "FAIL", r.equality_case ? "  (equality case)" : "");
}

}  // namespace

int main() {
  using namespace starcalc;

  const SphereRule rule = build_quadrature(2, 1024);
  const StarBody disk = StarBody::ball(2, 1.0);
  const StarBody wavy = StarBody::radial_trig_poly(1.0, {0.0, 0.0, 0.3}, {});

  // One hand-picked instance per flavor.
  IneqInputs pair{disk, wavy};
  pair.phi1 = OrliczFunction1::power(2.0);
  print_report(verify_inequality(IneqCase::kOrliczMinkowski, pair, rule));
  print_report(verify_inequality(IneqCase::kHarmonicBlaschkeVolume, pair, rule));
  pair.p = 3.0;
  print_report(verify_inequality(IneqCase::kLpRadialVolume, pair, rule));

  // Equality case: dilates sit exactly on the boundary.
  IneqInputs dilates{disk, StarBody::dilate(1.7, disk)};
  dilates.phi1 = OrliczFunction1::power(2.0);
  print_report(verify_inequality(IneqCase::kOrliczMinkowski, dilates, rule));

  // Variational limit: volume difference quotients of the eps-combination
  // recover the Orlicz dual mixed volume.
  const OrliczFunction1 square = OrliczFunction1::power(2.0);
  const LimitReport limit =
      verify_variational_limit(disk, wavy, square, square, 1.0, 1.0, 1.0, rule);
  std::printf("limit: extrapolated %.12f  target %.12f  rel err %.3e  %s\n",
              limit.extrapolated, limit.target, limit.relative_error,
              limit.pass ? "pass" : "FAIL");

  // A small seeded run across every case.
  SuiteConfig cfg;
  cfg.seed = 42;
  cfg.instances = 3;
  int failures = 0;
  for (const auto& r : run_inequality_suite(rule, cfg)) {
    if (!r.pass) {
      ++failures;
      print_report(r);
    }
  }
  std::printf("suite: %s\n", failures == 0 ? "all instances passed" : "FAILURES above");
  return failures == 0 ? 0 : 1;
}
