// Executable checks: inequality cases with oriented margins, structural
// properties of the addition (monotonicity, linear covariance, continuity,
// polynomial volume expansion), and the variational limit that recovers the
// Orlicz dual mixed volume from volume differences.
//
// Every case is oriented so that a non-negative margin means "the claimed
// inequality holds"; hypothesis violations raise PreconditionError instead of
// producing misleading reports.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/additions.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/functionals.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/random_bodies.hpp"
#include "starcalc/starbody.hpp"

namespace starcalc {

/// Inequality cases.  The string ids are part of the report format.
enum class IneqCase {
  kOrliczMinkowski,        // MINKOWSKI_5_5
  kOrliczBrunnMinkowski,   // BM_5_6
  kJensenComparison,       // JENSEN_5_4
  kLogMinkowski,           // LOG_6_5
  kLogBrunnMinkowski,      // LOG_6_6
  kProjectionBound,        // PROJ_7_4
  kHarmonicBlaschkeVolume, // HB_1_4
  kLpMinkowski,            // LP_COR_5_5
  kLpBrunnMinkowski,       // LP_COR_5_7
  kLpRadialVolume,         // LP_COR_5_8
};

inline const std::vector<IneqCase>& all_inequality_cases() {
  static const std::vector<IneqCase> kCases = {
      IneqCase::kOrliczMinkowski,  IneqCase::kOrliczBrunnMinkowski,
      IneqCase::kJensenComparison, IneqCase::kLogMinkowski,
      IneqCase::kLogBrunnMinkowski, IneqCase::kProjectionBound,
      IneqCase::kHarmonicBlaschkeVolume, IneqCase::kLpMinkowski,
      IneqCase::kLpBrunnMinkowski, IneqCase::kLpRadialVolume,
  };
  return kCases;
}

inline std::string case_label(IneqCase c) {
  switch (c) {
    case IneqCase::kOrliczMinkowski: return "MINKOWSKI_5_5";
    case IneqCase::kOrliczBrunnMinkowski: return "BM_5_6";
    case IneqCase::kJensenComparison: return "JENSEN_5_4";
    case IneqCase::kLogMinkowski: return "LOG_6_5";
    case IneqCase::kLogBrunnMinkowski: return "LOG_6_6";
    case IneqCase::kProjectionBound: return "PROJ_7_4";
    case IneqCase::kHarmonicBlaschkeVolume: return "HB_1_4";
    case IneqCase::kLpMinkowski: return "LP_COR_5_5";
    case IneqCase::kLpBrunnMinkowski: return "LP_COR_5_7";
    case IneqCase::kLpRadialVolume: return "LP_COR_5_8";
  }
  throw ConfigError("unknown inequality case");
}

inline IneqCase inequality_case_from_label(const std::string& label) {
  for (IneqCase c : all_inequality_cases()) {
    if (case_label(c) == label) return c;
  }
  throw ConfigError("unknown inequality case id: " + label);
}

/// Structural property cases.  The string ids are part of the report format.
enum class StructureCase {
  kMonotone,       // MONOTONE
  kGlCovariant,    // GL_COVARIANT
  kContinuous,     // CONTINUOUS
  kPolyExpansion,  // POLY_EXPANSION
};

inline const std::vector<StructureCase>& all_structure_cases() {
  static const std::vector<StructureCase> kCases = {
      StructureCase::kMonotone, StructureCase::kGlCovariant,
      StructureCase::kContinuous, StructureCase::kPolyExpansion,
  };
  return kCases;
}

inline std::string case_label(StructureCase c) {
  switch (c) {
    case StructureCase::kMonotone: return "MONOTONE";
    case StructureCase::kGlCovariant: return "GL_COVARIANT";
    case StructureCase::kContinuous: return "CONTINUOUS";
    case StructureCase::kPolyExpansion: return "POLY_EXPANSION";
  }
  throw ConfigError("unknown structure case");
}

inline StructureCase structure_case_from_label(const std::string& label) {
  for (StructureCase c : all_structure_cases()) {
    if (case_label(c) == label) return c;
  }
  throw ConfigError("unknown structure case id: " + label);
}

/// Uniform report shape for inequality and structure checks.
struct InequalityReport {
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;     ///< lhs - rhs, oriented so >= 0 means the claim holds
  double tolerance = 0.0;  ///< pass <=> margin >= -tolerance
  double scale = 1.0;      ///< max(1, |lhs|, |rhs|); context for margin size
  bool pass = false;
  bool equality_case = false;
};

/// Operand bundle for verify_inequality.  Unused fields are ignored by cases
/// that do not need them.
struct IneqInputs {
  StarBody first;   ///< the body carrying the cone measure / outer role
  StarBody second;  ///< the compared body
  OrliczFunction1 phi1 = OrliczFunction1::power(2.0);
  OrliczFunction1 phi2 = OrliczFunction1::power(2.0);
  double k = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double p = 2.0;
  double comb_weight2 = 1.0;  ///< second-slot gauge weight for the sum cases
};

namespace detail {

inline double report_scale(double lhs, double rhs) {
  return std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

/// Dilate detection: variance of the per-node radial ratio below 1e-10.
inline bool detect_dilates(const StarBody& first, const StarBody& second,
                           const SphereRule& rule) {
  auto a = first.samples(rule);
  auto b = second.samples(rule);
  const std::size_t count = a->size();
  double mean = 0.0;
  for (std::size_t i = 0; i < count; ++i) mean += (*b)[i] / (*a)[i];
  mean /= static_cast<double>(count);
  double var = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double d = (*b)[i] / (*a)[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(count);
  return var < 1e-10;
}

/// Largest value of k2 rho_second^n / (k1 rho_first^n) across nodes.
inline double max_scaled_ratio(const StarBody& first, const StarBody& second, double k1,
                               double k2, const SphereRule& rule) {
  auto a = first.samples(rule);
  auto b = second.samples(rule);
  const double n = static_cast<double>(first.dim());
  double worst = 0.0;
  for (std::size_t i = 0; i < a->size(); ++i) {
    worst = std::max(worst, k2 * std::pow((*b)[i], n) / (k1 * std::pow((*a)[i], n)));
  }
  return worst;
}

/// Expectation of log(1 - k2 rho_second^n / (k1 rho_first^n)) under the dual
/// cone measure of `first`.  Caller must have verified the ratio stays < 1.
inline double log_ratio_expectation(const StarBody& first, const StarBody& second, double k1,
                                    double k2, const SphereRule& rule) {
  auto a = first.samples(rule);
  auto b = second.samples(rule);
  const int n = first.dim();
  double vol = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < a->size(); ++i) {
    const double rk_n = std::pow((*a)[i], n);
    const double ratio = k2 * std::pow((*b)[i], n) / (k1 * rk_n);
    vol += rule.weight(i) * rk_n;
    sum += rule.weight(i) * rk_n * std::log1p(-ratio);
  }
  return sum / vol;
}

inline InequalityReport finish_report(std::string case_id, double lhs, double rhs,
                                      double tolerance, bool equality_case) {
  InequalityReport r;
  r.case_id = std::move(case_id);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = lhs - rhs;
  r.tolerance = tolerance;
  r.scale = report_scale(lhs, rhs);
  r.pass = r.margin >= -tolerance;
  r.equality_case = equality_case;
  return r;
}

}  // namespace detail

/// Runs one inequality case.  `tolerance` bounds the admissible negative
/// margin (numerical slack); hypotheses are hard preconditions.
inline InequalityReport verify_inequality(IneqCase c, const IneqInputs& in,
                                          const SphereRule& rule, double tolerance = 1e-9) {
  if (in.first.dim() != in.second.dim() || in.first.dim() != rule.dim()) {
    throw ConfigError("inequality check requires bodies and rule of one dimension");
  }
  const int n = in.first.dim();
  const bool dilates = detail::detect_dilates(in.first, in.second, rule);
  const double vol_first = volume(in.first, rule);
  const double vol_second = volume(in.second, rule);

  switch (c) {
    case IneqCase::kOrliczMinkowski: {
      const double lhs = orlicz_dual_mixed_volume(in.first, in.second, in.phi1, in.k1, in.k2, rule);
      const double rhs = vol_first * in.phi1(in.k2 * vol_second / (in.k1 * vol_first));
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kOrliczBrunnMinkowski: {
      OrliczFunctionM gauge = OrliczFunctionM::sum(
          {{in.phi1, 1.0}, {in.phi2, in.comb_weight2}});
      SumSpec spec{{in.first, in.second}, gauge, in.k, {in.k1, in.k2}};
      const StarBody sum = orlicz_sum(spec);
      const double vol_sum = volume(sum, rule);
      const double args[2] = {in.k1 * vol_first / (in.k * vol_sum),
                              in.k2 * vol_second / (in.k * vol_sum)};
      const double rhs = gauge(std::span<const double>(args, 2));
      return detail::finish_report(case_label(c), 1.0, rhs, tolerance, dilates);
    }

    case IneqCase::kJensenComparison: {
      const double bound = in.phi1.domain_bound();
      if (std::isfinite(bound)) {
        const double worst = detail::max_scaled_ratio(in.first, in.second, in.k1, in.k2, rule);
        if (!(worst < bound * (1.0 - 1e-9))) {
          throw PreconditionError(
              "comparison hypothesis fails: scaled radial ratio reaches the gauge domain "
              "bound (containment violated)");
        }
      }
      const double mean_arg = in.k2 * vol_second / (in.k1 * vol_first);
      if (std::isfinite(bound) && !(mean_arg < bound)) {
        throw PreconditionError("comparison hypothesis fails: volume ratio leaves the domain");
      }
      const double lhs =
          orlicz_dual_mixed_volume(in.first, in.second, in.phi1, in.k1, in.k2, rule) / vol_first;
      const double rhs = in.phi1(mean_arg);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kLogMinkowski: {
      const double worst = detail::max_scaled_ratio(in.first, in.second, in.k1, in.k2, rule);
      if (!(worst < 1.0 - 1e-9)) {
        throw PreconditionError(
            "log inequality hypothesis fails: scaled second body is not strictly inside the "
            "scaled first body");
      }
      const double lhs = std::log1p(-in.k2 * vol_second / (in.k1 * vol_first));
      const double rhs = detail::log_ratio_expectation(in.first, in.second, in.k1, in.k2, rule);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kLogBrunnMinkowski: {
      const StarBody sum = harmonic_blaschke_sum(in.first, in.second, rule);
      const double worst = detail::max_scaled_ratio(sum, in.second, in.k1, in.k2, rule);
      if (!(worst < 1.0 - 1e-9)) {
        throw PreconditionError(
            "log inequality hypothesis fails: scaled second body is not strictly inside the "
            "scaled harmonic Blaschke sum");
      }
      const double vol_sum = volume(sum, rule);
      const double lhs = std::log1p(-in.k2 * vol_second / (in.k1 * vol_sum));
      const double rhs = detail::log_ratio_expectation(sum, in.second, in.k1, in.k2, rule);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kProjectionBound: {
      const double lhs =
          orlicz_dual_projection_norm(in.first, in.second, in.phi1, in.k1, in.k2, rule);
      const double rhs =
          std::pow(in.k2 * vol_second / (in.k1 * vol_first), 1.0 / static_cast<double>(n));
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kHarmonicBlaschkeVolume: {
      const StarBody sum = harmonic_blaschke_sum(in.first, in.second, rule);
      const double inv_n = 1.0 / static_cast<double>(n);
      const double lhs = std::pow(volume(sum, rule), inv_n);
      const double rhs = std::pow(vol_first, inv_n) + std::pow(vol_second, inv_n);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kLpMinkowski: {
      const double base = lp_dual_mixed_volume(in.second, in.first, in.p, rule);
      const double lhs = std::pow(base, n);
      const double rhs = std::pow(vol_second, static_cast<double>(n) + in.p) *
                         std::pow(vol_first, -in.p);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kLpBrunnMinkowski: {
      const StarBody sum = lp_harmonic_blaschke_sum(in.first, in.second, in.p, rule);
      const double e = in.p / static_cast<double>(n);
      const double lhs = std::pow(volume(sum, rule), e);
      const double rhs = std::pow(vol_first, e) + std::pow(vol_second, e);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }

    case IneqCase::kLpRadialVolume: {
      if (!(in.p >= static_cast<double>(n))) {
        throw PreconditionError(
            "radial-sum volume inequality requires exponent p >= dimension; it reverses below");
      }
      const StarBody sum = lp_radial_sum(in.first, in.second, in.p);
      const double e = in.p / static_cast<double>(n);
      const double lhs = std::pow(volume(sum, rule), e);
      const double rhs = std::pow(vol_first, e) + std::pow(vol_second, e);
      return detail::finish_report(case_label(c), lhs, rhs, tolerance, dilates);
    }
  }
  throw ConfigError("unknown inequality case");
}

/// Operands for the structural checks; fields irrelevant to a case are
/// ignored.  `map` drives the covariance case, `bump` the monotone one.
struct StructureInputs {
  StarBody first;
  StarBody second;
  OrliczFunctionM gauge = OrliczFunctionM::sum(
      {{OrliczFunction1::power(2.0), 1.0}, {OrliczFunction1::power(2.0), 1.0}});
  double k = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  Matrix map;          ///< linear map for the covariance case
  double bump = 0.1;   ///< radial enlargement for the monotonicity case
};

/// Runs one structural property check with its canonical tolerance.
inline InequalityReport verify_structure(StructureCase c, const StructureInputs& in,
                                         const SphereRule& rule) {
  if (in.first.dim() != in.second.dim() || in.first.dim() != rule.dim()) {
    throw ConfigError("structure check requires bodies and rule of one dimension");
  }
  switch (c) {
    case StructureCase::kMonotone: {
      // Enlarging one summand can only enlarge the sum, pointwise.
      if (!(in.bump > 0.0)) throw ConfigError("monotonicity check needs a positive bump");
      const StarBody large =
          radial_minkowski_comb(in.first, StarBody::ball(rule.dim(), 1.0), 1.0, in.bump);
      const StarBody sum_small =
          orlicz_sum({{in.first, in.second}, in.gauge, in.k, {in.k1, in.k2}});
      const StarBody sum_large =
          orlicz_sum({{large, in.second}, in.gauge, in.k, {in.k1, in.k2}});
      auto a = sum_small.samples(rule);
      auto b = sum_large.samples(rule);
      double min_gap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < a->size(); ++i) {
        min_gap = std::min(min_gap, (*b)[i] - (*a)[i]);
      }
      return detail::finish_report(case_label(c), min_gap, 0.0, 1e-12, false);
    }

    case StructureCase::kGlCovariant: {
      // The sum commutes with invertible linear maps: mapping the summands
      // and pulling the sum back must reproduce the plain sum.  Deviations
      // are probed at (up to) 64 rule nodes, strided across the sphere.
      if (in.map.size() != static_cast<std::size_t>(rule.dim())) {
        throw ConfigError("covariance check needs a square map matching the dimension");
      }
      const StarBody plain =
          orlicz_sum({{in.first, in.second}, in.gauge, in.k, {in.k1, in.k2}});
      const StarBody mapped = orlicz_sum({{StarBody::linear_image(in.map, in.first),
                                           StarBody::linear_image(in.map, in.second)},
                                          in.gauge,
                                          in.k,
                                          {in.k1, in.k2}});
      const StarBody pulled_back = StarBody::linear_image(in.map.inverse(), mapped);
      const std::size_t stride = std::max<std::size_t>(1, rule.size() / 64);
      double worst = 0.0;
      for (std::size_t i = 0; i < rule.size(); i += stride) {
        const Direction& u = rule.node(i);
        const double reference = plain.radial(u);
        worst = std::max(worst, std::fabs(pulled_back.radial(u) - reference) / reference);
      }
      return detail::finish_report(case_label(c), 0.0, worst, 1e-9, false);
    }

    case StructureCase::kContinuous: {
      // Dilating one summand by (1+h) moves the sum's radial field by O(h):
      // the per-h difference quotients must agree to within 5%.
      const StarBody base_sum =
          orlicz_sum({{in.first, in.second}, in.gauge, in.k, {in.k1, in.k2}});
      const double steps[3] = {1e-2, 1e-3, 1e-4};
      double quotients[3];
      for (int s = 0; s < 3; ++s) {
        const StarBody perturbed =
            orlicz_sum({{StarBody::dilate(1.0 + steps[s], in.first), in.second},
                        in.gauge,
                        in.k,
                        {in.k1, in.k2}});
        quotients[s] = radial_hausdorff(perturbed, base_sum, rule) / steps[s];
      }
      double worst = 0.0;
      for (int s = 1; s < 3; ++s) {
        worst = std::max(worst, std::fabs(quotients[s] / quotients[0] - 1.0));
      }
      return detail::finish_report(case_label(c), 0.0, worst, 0.05, false);
    }

    case StructureCase::kPolyExpansion: {
      // The volume of the radial combination first + t*second is a degree-n
      // polynomial in t whose coefficients are binomial multiples of the
      // dual mixed volumes; recover them by least squares over a t-grid.
      const int n = rule.dim();
      if (n > 4) {
        throw ConfigError("polynomial expansion check supports dimension <= 4");
      }
      const StarBody& first = in.first;
      const StarBody& second = in.second;
      const std::vector<double> grid = {0.0, 0.25, 0.5, 1.0, 2.0};
      std::vector<double> volumes(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] == 0.0) {
          volumes[g] = volume(first, rule);
        } else {
          volumes[g] = volume(radial_minkowski_comb(first, second, 1.0, grid[g]), rule);
        }
      }
      // Least-squares fit of a degree-n polynomial via normal equations.
      const std::size_t terms = static_cast<std::size_t>(n) + 1;
      Matrix normal(terms);
      std::vector<double> moment(terms, 0.0);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> powers(terms, 1.0);
        for (std::size_t j = 1; j < terms; ++j) powers[j] = powers[j - 1] * grid[g];
        for (std::size_t r = 0; r < terms; ++r) {
          moment[r] += powers[r] * volumes[g];
          for (std::size_t col = 0; col < terms; ++col) {
            normal(r, col) += powers[r] * powers[col];
          }
        }
      }
      const std::vector<double> fitted = normal.inverse().apply(moment);
      double worst = 0.0;
      double binomial = 1.0;
      for (std::size_t i = 0; i < terms; ++i) {
        const double expected =
            binomial * dual_mixed_volume_i(first, second, static_cast<int>(i), rule);
        worst = std::max(worst, std::fabs(fitted[i] - expected) /
                                    std::max(1.0, std::fabs(expected)));
        binomial = binomial * static_cast<double>(n - static_cast<int>(i)) /
                   static_cast<double>(i + 1);
      }
      return detail::finish_report(case_label(c), 0.0, worst, 1e-8, false);
    }
  }
  throw ConfigError("unknown structure case");
}

/// Seeded variant: draws bodies, gauge, constants, and (for the covariance
/// case) a well-conditioned matrix from a deterministic generator.
inline InequalityReport verify_structure(StructureCase c, const SphereRule& rule,
                                         std::uint64_t seed) {
  BodyGenerator gen(rule.dim(), seed);
  StructureInputs in{gen.mild_body(), gen.mild_body()};
  in.gauge = OrliczFunctionM::sum({{gen.power_phi(), 1.0}, {gen.power_phi(), 1.0}});
  in.k1 = gen.uniform(0.5, 2.0);
  in.k2 = gen.uniform(0.5, 2.0);
  in.bump = gen.uniform(0.05, 0.2);
  if (c == StructureCase::kGlCovariant) {
    in.map = gen.well_conditioned_matrix(10.0);
  }
  return verify_structure(c, in, rule);
}

/// Options for the variational-limit check.
struct LimitOptions {
  std::vector<double> ladder = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double relative_tolerance = 1e-6;  ///< extrapolated vs. target
  double gap_tolerance = 1e-5;       ///< limit-body distance per unit scale
};

struct LimitReport {
  std::vector<double> ladder;
  std::vector<double> quotients;    ///< normalized volume difference quotients
  std::vector<double> radial_gaps;  ///< sup distance to the limit body per step
  double extrapolated = 0.0;
  double target = 0.0;
  double relative_error = 0.0;
  double limit_scale = 0.0;  ///< sup radial value of the limit body
  double relative_tolerance = 0.0;
  double gap_tolerance = 0.0;
  bool pass = false;
};

/// Checks that the normalized volume difference quotient of the two-body sum
/// converges to the Orlicz dual mixed volume, and that the sum collapses to
/// the expected dilate of the first body.
inline LimitReport verify_variational_limit(const StarBody& first, const StarBody& second,
                                            const OrliczFunction1& phi1,
                                            const OrliczFunction1& phi2, double k, double k1,
                                            double k2, const SphereRule& rule,
                                            const LimitOptions& opts = {}) {
  if (opts.ladder.size() < 2) {
    throw ConfigError("variational limit needs at least two ladder steps");
  }
  for (std::size_t i = 0; i < opts.ladder.size(); ++i) {
    const double eps = opts.ladder[i];
    if (!(eps > 0.0) || eps > 1.0) {
      throw ConfigError("ladder steps must lie in (0, 1]");
    }
    if (i > 0 && !(eps < opts.ladder[i - 1])) {
      throw ConfigError("ladder must be strictly decreasing");
    }
  }

  const int n = first.dim();
  const double vol_first = volume(first, rule);
  const double derivative = phi1.left_derivative(1.0);
  const double target = orlicz_dual_mixed_volume(first, second, phi2, k1, k2, rule);
  const StarBody limit_body =
      StarBody::dilate(std::pow(k1 / k, 1.0 / static_cast<double>(n)), first);
  auto limit_samples = limit_body.samples(rule);
  double limit_scale = 0.0;
  for (double r : *limit_samples) limit_scale = std::max(limit_scale, r);

  LimitReport report;
  report.ladder = opts.ladder;
  report.relative_tolerance = opts.relative_tolerance;
  report.gap_tolerance = opts.gap_tolerance;
  report.target = target;
  report.limit_scale = limit_scale;

  // Machine-tight per-direction solves: the quotient divides an O(eps)
  // volume difference by eps, so solver bias must sit at rounding level.
  SolveOptions tight;
  tight.rel_tol = 0.0;
  for (double eps : opts.ladder) {
    try {
      const StarBody sum =
          orlicz_linear_comb(first, second, phi1, phi2, 1.0, eps, k, k1, k2, tight);
      report.quotients.push_back(derivative / k1 * (k * volume(sum, rule) - k1 * vol_first) /
                                 eps);
      report.radial_gaps.push_back(radial_hausdorff(sum, limit_body, rule));
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (at ladder step " + std::to_string(eps) +
                        ")");
    }
  }

  // Neville polynomial extrapolation of the quotients to step zero.
  std::vector<double> table = report.quotients;
  const std::size_t m = table.size();
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double xi = opts.ladder[i];
      const double xj = opts.ladder[i + level];
      table[i] = (xi * table[i + 1] - xj * table[i]) / (xi - xj);
    }
  }
  report.extrapolated = table[0];
  report.relative_error = std::fabs(report.extrapolated - target) / std::fabs(target);
  const bool gap_ok =
      report.radial_gaps.back() <= opts.gap_tolerance * limit_scale;
  report.pass = report.relative_error <= opts.relative_tolerance && gap_ok;
  return report;
}

/// Suite configuration: a master seed, instances per case, and the margin
/// tolerance shared by all inequality reports.
struct SuiteConfig {
  std::uint64_t seed = 0;
  int instances = 100;
  double tolerance = 1e-9;
};

namespace detail {

/// Instance inputs for one case, hypothesis-satisfying by construction.
inline IneqInputs make_case_inputs(IneqCase c, BodyGenerator& gen, const SphereRule& rule,
                                   bool dilate_pair, int instance) {
  StarBody first = gen.mild_body();
  StarBody second =
      dilate_pair ? StarBody::dilate(gen.uniform(0.5, 2.0), first) : gen.mild_body();
  IneqInputs in{first, second};
  const int n = rule.dim();
  switch (c) {
    case IneqCase::kOrliczMinkowski:
      in.phi1 = gen.power_phi();
      in.k1 = gen.uniform(0.5, 2.0);
      in.k2 = gen.uniform(0.5, 2.0);
      break;
    case IneqCase::kOrliczBrunnMinkowski:
      in.phi1 = gen.power_phi();
      in.phi2 = gen.power_phi();
      in.k = gen.uniform(0.5, 2.0);
      in.k1 = gen.uniform(0.5, 2.0);
      in.k2 = gen.uniform(0.5, 2.0);
      in.comb_weight2 = gen.uniform(0.25, 1.0);
      break;
    case IneqCase::kJensenComparison:
      if (instance % 2 == 0) {
        in.phi1 = gen.power_phi();
        in.k1 = gen.uniform(0.5, 2.0);
        in.k2 = gen.uniform(0.5, 2.0);
      } else {
        // Bounded-domain gauge: scale k2 so the ratio stays inside [0, 1).
        in.phi1 = OrliczFunction1::neglog(true);
        in.k1 = gen.uniform(0.5, 2.0);
        const double worst = max_scaled_ratio(first, second, in.k1, 1.0, rule);
        in.k2 = (1.0 - gen.uniform(0.1, 0.5)) / worst;
      }
      break;
    case IneqCase::kLogMinkowski: {
      in.k1 = gen.uniform(0.5, 2.0);
      const double worst = max_scaled_ratio(first, second, in.k1, 1.0, rule);
      in.k2 = (1.0 - gen.uniform(0.1, 0.5)) / worst;
      break;
    }
    case IneqCase::kLogBrunnMinkowski: {
      in.k1 = gen.uniform(0.5, 2.0);
      const StarBody sum = harmonic_blaschke_sum(first, second, rule);
      const double worst = max_scaled_ratio(sum, second, in.k1, 1.0, rule);
      in.k2 = (1.0 - gen.uniform(0.1, 0.5)) / worst;
      break;
    }
    case IneqCase::kProjectionBound:
      in.phi1 = gen.power_phi();
      in.k1 = gen.uniform(0.5, 2.0);
      in.k2 = gen.uniform(0.5, 2.0);
      break;
    case IneqCase::kHarmonicBlaschkeVolume:
      break;
    case IneqCase::kLpMinkowski:
    case IneqCase::kLpBrunnMinkowski:
      in.p = 1.0 + gen.uniform(0.0, 2.0);
      break;
    case IneqCase::kLpRadialVolume:
      in.p = static_cast<double>(n) + gen.uniform(0.0, 2.0);
      break;
  }
  return in;
}

}  // namespace detail

/// Seeded random instances for every inequality case.
inline std::vector<InequalityReport> run_inequality_suite(const SphereRule& rule,
                                                          const SuiteConfig& cfg) {
  std::vector<InequalityReport> reports;
  reports.reserve(all_inequality_cases().size() * static_cast<std::size_t>(cfg.instances));
  std::uint64_t case_tag = 0;
  for (IneqCase c : all_inequality_cases()) {
    ++case_tag;
    for (int i = 0; i < cfg.instances; ++i) {
      BodyGenerator gen(rule.dim(),
                        substream_seed(cfg.seed, case_tag * 1000003ull +
                                                     static_cast<std::uint64_t>(i)));
      const IneqInputs in = detail::make_case_inputs(c, gen, rule, false, i);
      reports.push_back(verify_inequality(c, in, rule, cfg.tolerance));
    }
  }
  return reports;
}

/// Dilate pairs must sit on the equality boundary of every case: the report
/// passes when the pair is detected as dilates and |margin| <= tol * scale.
inline std::vector<InequalityReport> run_dilate_equality_suite(const SphereRule& rule,
                                                               const SuiteConfig& cfg) {
  std::vector<InequalityReport> reports;
  reports.reserve(all_inequality_cases().size() * static_cast<std::size_t>(cfg.instances));
  std::uint64_t case_tag = 0;
  for (IneqCase c : all_inequality_cases()) {
    ++case_tag;
    for (int i = 0; i < cfg.instances; ++i) {
      BodyGenerator gen(rule.dim(),
                        substream_seed(cfg.seed, 7000017ull * case_tag +
                                                     static_cast<std::uint64_t>(i)));
      const IneqInputs in = detail::make_case_inputs(c, gen, rule, true, i);
      InequalityReport r = verify_inequality(c, in, rule, cfg.tolerance);
      r.pass = r.equality_case && std::fabs(r.margin) <= cfg.tolerance * r.scale;
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

/// Seeded structural checks; the expansion check only exists through
/// dimension 4 and is skipped above that.
inline std::vector<InequalityReport> run_structure_suite(const SphereRule& rule,
                                                         const SuiteConfig& cfg) {
  std::vector<InequalityReport> reports;
  std::uint64_t case_tag = 0;
  for (StructureCase c : all_structure_cases()) {
    ++case_tag;
    if (c == StructureCase::kPolyExpansion && rule.dim() > 4) continue;
    for (int i = 0; i < cfg.instances; ++i) {
      reports.push_back(verify_structure(
          c, rule,
          substream_seed(cfg.seed, 9000011ull * case_tag + static_cast<std::uint64_t>(i))));
    }
  }
  return reports;
}

/// Seeded variational-limit instances over a ratio-bounded pair family.
inline std::vector<LimitReport> run_limit_suite(const SphereRule& rule,
                                                const SuiteConfig& cfg) {
  std::vector<LimitReport> reports;
  reports.reserve(static_cast<std::size_t>(cfg.instances));
  for (int i = 0; i < cfg.instances; ++i) {
    BodyGenerator gen(rule.dim(), substream_seed(cfg.seed, 11000023ull + static_cast<std::uint64_t>(i)));
    const StarBody first = gen.mild_body();
    // Keep the second body's radial ratio against the first bounded, so the
    // gauge argument (and with it the finite-step gap) stays moderate.
    const StarBody second = radial_minkowski_comb(first, gen.mild_body(),
                                                  gen.uniform(0.6, 1.0),
                                                  gen.uniform(0.1, 0.3));
    const OrliczFunction1 phi = (i % 2 == 0) ? OrliczFunction1::power(1.5)
                                             : OrliczFunction1::power(2.0);
    double k = 1.0, k1 = 1.0, k2 = 1.0;
    if (i % 3 == 0) {
      k = k1 = k2 = gen.uniform(0.8, 1.25);
    }
    reports.push_back(
        verify_variational_limit(first, second, phi, phi, k, k1, k2, rule));
  }
  return reports;
}

}  // namespace starcalc
