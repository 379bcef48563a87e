// Tests for the radial additions: implicit-gauge sums, p-sums, linear
// combinations, and the volume-coupled self-consistent sum.

#include <gtest/gtest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "starcalc/additions.hpp"
#include "starcalc/random_bodies.hpp"

namespace sc = starcalc;

namespace {

const sc::SphereRule& circle_rule() {
  static const sc::SphereRule rule = sc::SphereRule::circle(1024);
  return rule;
}

const sc::SphereRule& sphere_rule() {
  static const sc::SphereRule rule = sc::SphereRule::sphere_product(64);
  return rule;
}

sc::OrliczFunctionM two_powers(double q1, double q2) {
  return sc::OrliczFunctionM::sum(
      {{sc::OrliczFunction1::power(q1), 1.0}, {sc::OrliczFunction1::power(q2), 1.0}});
}

double sup_relative_gap(const sc::StarBody& a, const sc::StarBody& b,
                        const sc::SphereRule& rule) {
  auto ra = a.samples(rule);
  auto rb = b.samples(rule);
  double worst = 0.0;
  for (std::size_t i = 0; i < ra->size(); ++i) {
    worst = std::max(worst, std::fabs((*ra)[i] - (*rb)[i]) / (*rb)[i]);
  }
  return worst;
}

}  // namespace

TEST(LpRadialSum, BallsCombineByExponentRule) {
  const auto a = sc::StarBody::ball(2, 3.0);
  const auto b = sc::StarBody::ball(2, 4.0);
  const auto sum = sc::lp_radial_sum(a, b, 2.0);
  EXPECT_NEAR(sum.radial(sc::Direction::from_angle(0.7)), 5.0, 1e-14);
  const auto first = sc::lp_radial_sum(a, b, 1.0);
  EXPECT_NEAR(first.radial(sc::Direction::from_angle(0.7)), 7.0, 1e-14);
}

TEST(LpRadialSum, ExponentValidation) {
  const auto a = sc::StarBody::ball(2, 1.0);
  EXPECT_THROW(sc::lp_radial_sum(a, a, 0.0), sc::ConfigError);
  EXPECT_THROW(sc::lp_radial_sum(a, a, -2.0), sc::ConfigError);
  // Fractional exponents are fine for the plain radial sum; only the
  // volume-normalized variants restrict the exponent.
  EXPECT_NO_THROW(sc::lp_radial_sum(a, a, 0.5));
  EXPECT_THROW(sc::lp_radial_sum(a, sc::StarBody::ball(3, 1.0), 2.0), sc::ConfigError);
}

TEST(RadialComb, MixesRadialFunctionsLinearly) {
  const auto a = sc::StarBody::ball(2, 2.0);
  const auto b = sc::StarBody::radial_trig_poly(1.0, {0.0, 0.0, 0.3}, {});
  const auto comb = sc::radial_minkowski_comb(a, b, 0.5, 2.0);
  const sc::Direction u = sc::Direction::from_angle(0.0);
  EXPECT_NEAR(comb.radial(u), 0.5 * 2.0 + 2.0 * 1.3, 1e-14);
  EXPECT_THROW(sc::radial_minkowski_comb(a, b, -1.0, 1.0), sc::ConfigError);
  EXPECT_THROW(sc::radial_minkowski_comb(a, b, 0.0, 0.0), sc::ConfigError);
}

TEST(OrliczSum, ReducesToLpSumForPowerGauges) {
  // Gauge x1^{p/n} + x2^{p/n} with unit constants collapses to the p-sum.
  sc::BodyGenerator gen(2, 7001u);
  for (int trial = 0; trial < 5; ++trial) {
    const auto [first, second] = gen.pair();
    for (double p : {2.0, 3.0, 5.0}) {
      const double q = p / 2.0;
      sc::SumSpec spec{{first, second}, two_powers(q, q)};
      const auto implicit_sum = sc::orlicz_sum(spec);
      const auto direct_sum = sc::lp_radial_sum(first, second, p);
      EXPECT_LT(sup_relative_gap(implicit_sum, direct_sum, circle_rule()), 1e-10);
    }
  }
}

TEST(OrliczSum, DefiningResidualIsTiny) {
  sc::BodyGenerator gen(2, 9002u);
  const auto [first, second] = gen.pair();
  sc::SumSpec spec{{first, second}, two_powers(1.5, 2.5), 1.3, {0.7, 1.9}};
  const auto sum = sc::orlicz_sum(spec);
  EXPECT_LE(sc::orlicz_sum_residual(sum, spec, circle_rule()), 1e-10);
}

TEST(OrliczSum, ResidualWithBoundedDomainGauge) {
  sc::BodyGenerator gen(2, 9003u);
  const auto [first, second] = gen.mild_pair();
  const auto gauge = sc::OrliczFunctionM::sum(
      {{sc::OrliczFunction1::neglog(true), 1.0}, {sc::OrliczFunction1::power(2.0), 1.0}});
  sc::SumSpec spec{{first, second}, gauge};
  const auto sum = sc::orlicz_sum(spec);
  EXPECT_LE(sc::orlicz_sum_residual(sum, spec, circle_rule()), 1e-10);
}

TEST(OrliczSum, SingleTermPowerGaugeIsIdentity) {
  // One summand, gauge x^q, matching constants: the equation solves to the
  // body itself.
  sc::BodyGenerator gen(2, 9004u);
  const auto body = gen.body();
  sc::SumSpec spec{{body},
                   sc::OrliczFunctionM::sum({{sc::OrliczFunction1::power(2.7), 1.0}}),
                   1.4,
                   {1.4}};
  const auto sum = sc::orlicz_sum(spec);
  EXPECT_LT(sc::radial_hausdorff(sum, body, circle_rule()), 1e-12);
}

TEST(OrliczSum, ThreeSummandsSolveConsistently) {
  sc::BodyGenerator gen(2, 9005u);
  const auto a = gen.mild_body();
  const auto b = gen.mild_body();
  const auto c = gen.mild_body();
  const auto gauge = sc::OrliczFunctionM::sum({{sc::OrliczFunction1::power(1.5), 1.0},
                                               {sc::OrliczFunction1::power(2.0), 0.5},
                                               {sc::OrliczFunction1::power(3.0), 0.25}});
  sc::SumSpec spec{{a, b, c}, gauge, 0.9, {1.1, 0.8, 1.3}};
  const auto sum = sc::orlicz_sum(spec);
  EXPECT_LE(sc::orlicz_sum_residual(sum, spec, circle_rule()), 1e-10);
}

TEST(OrliczSum, ConfigurationValidation) {
  const auto ball = sc::StarBody::ball(2, 1.0);
  // Gauge arity must match the body count.
  sc::SumSpec arity_mismatch{{ball}, two_powers(2.0, 2.0)};
  EXPECT_THROW(sc::orlicz_sum(arity_mismatch), sc::ConfigError);
  // One constant per body.
  sc::SumSpec bad_constants{{ball, ball}, two_powers(2.0, 2.0), 1.0, {1.0}};
  EXPECT_THROW(sc::orlicz_sum(bad_constants), sc::ConfigError);
  // Positive scale constant.
  sc::SumSpec bad_k{{ball, ball}, two_powers(2.0, 2.0), 0.0, {}};
  EXPECT_THROW(sc::orlicz_sum(bad_k), sc::ConfigError);
  // Mixed dimensions.
  sc::SumSpec mixed{{ball, sc::StarBody::ball(3, 1.0)}, two_powers(2.0, 2.0)};
  EXPECT_THROW(sc::orlicz_sum(mixed), sc::ConfigError);
}

TEST(OrliczSum, UnreachableGaugeLevelRaisesSolverError) {
  // A gauge capped at one half can never satisfy the defining equation; the
  // cap sits strictly below the level even after floating-point saturation.
  sc::OrliczFunction1::CustomSpec capped;
  capped.eval = [](double t) { return t / (2.0 * (1.0 + t)); };
  capped.convex_increasing = false;
  const auto gauge = sc::OrliczFunctionM::sum({{sc::OrliczFunction1::custom(capped), 1.0}});
  const auto ball = sc::StarBody::ball(2, 1.0);
  sc::SumSpec spec{{ball}, gauge};
  const auto sum = sc::orlicz_sum(spec);
  EXPECT_THROW(sum.radial(sc::Direction::from_angle(0.2)), sc::SolverError);
}

TEST(OrliczLinearComb, MatchesExplicitSumSpec) {
  sc::BodyGenerator gen(2, 9006u);
  const auto [first, second] = gen.mild_pair();
  const auto phi1 = sc::OrliczFunction1::power(1.5);
  const auto phi2 = sc::OrliczFunction1::power(2.0);
  const auto comb = sc::orlicz_linear_comb(first, second, phi1, phi2, 0.6, 0.4, 1.2, 0.9, 1.1);
  sc::SumSpec spec{{first, second},
                   sc::OrliczFunctionM::sum({{phi1, 0.6}, {phi2, 0.4}}),
                   1.2,
                   {0.9, 1.1}};
  const auto direct = sc::orlicz_sum(spec);
  EXPECT_LT(sc::radial_hausdorff(comb, direct, circle_rule()), 1e-13);
  EXPECT_THROW(sc::orlicz_linear_comb(first, second, phi1, phi2, -0.1, 0.5), sc::ConfigError);
  EXPECT_THROW(sc::orlicz_linear_comb(first, second, phi1, phi2, 0.0, 0.0), sc::ConfigError);
}

TEST(OrliczLinearComb, ZeroCoefficientDropsASummand) {
  // With beta = 0 and matching constants the combination returns the first
  // body regardless of the second.
  const auto first = sc::StarBody::ball(2, 1.2);
  const auto second = sc::StarBody::radial_trig_poly(1.0, {0.2}, {});
  const auto comb = sc::orlicz_linear_comb(first, second, sc::OrliczFunction1::power(2.0),
                                           sc::OrliczFunction1::power(2.0), 1.0, 0.0);
  EXPECT_LT(sc::radial_hausdorff(comb, first, circle_rule()), 1e-12);
}

TEST(HarmonicBlaschke, BallsObeyRadiusAddition) {
  const auto a = sc::StarBody::ball(2, 1.0);
  const auto b = sc::StarBody::ball(2, 2.0);
  const auto sum = sc::harmonic_blaschke_sum(a, b, circle_rule());
  EXPECT_NEAR(sum.radial(sc::Direction::from_angle(1.0)), 3.0, 1e-10);
  const auto in_space =
      sc::harmonic_blaschke_sum(sc::StarBody::ball(3, 1.0), sc::StarBody::ball(3, 2.0),
                                sphere_rule());
  EXPECT_NEAR(in_space.radial(sc::Direction({0.0, 0.0, 1.0})), 3.0, 1e-10);
}

TEST(HarmonicBlaschke, PVariantOnBalls) {
  const auto a = sc::StarBody::ball(2, 3.0);
  const auto b = sc::StarBody::ball(2, 4.0);
  const auto sum = sc::lp_harmonic_blaschke_sum(a, b, 2.0, circle_rule());
  EXPECT_NEAR(sum.radial(sc::Direction::from_angle(0.3)), 5.0, 1e-10);
  EXPECT_THROW(sc::lp_harmonic_blaschke_sum(a, b, 0.5, circle_rule()), sc::ConfigError);
}

TEST(HarmonicBlaschke, SelfSumIsDoubling) {
  sc::BodyGenerator gen(2, 9007u);
  const auto body = gen.mild_body();
  const auto sum = sc::harmonic_blaschke_sum(body, body, circle_rule());
  const auto doubled = sc::StarBody::dilate(2.0, body);
  EXPECT_LT(sc::radial_hausdorff(sum, doubled, circle_rule()), 1e-10);
}

TEST(SelfConsistentSum, ConstantRuleConvergesInOneSolve) {
  sc::BodyGenerator gen(2, 9008u);
  const auto [first, second] = gen.mild_pair();
  sc::SumSpec base{{first, second}, two_powers(2.0, 2.0)};
  sc::FixedPointTrace trace;
  const auto fixed = sc::self_consistent_orlicz_sum(
      base, [](double) { return sc::SumConstants{1.3, {0.9, 1.1}}; }, {}, circle_rule(),
      &trace);
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.iterations, 1);
  sc::SumSpec direct = base;
  direct.k = 1.3;
  direct.ks = {0.9, 1.1};
  EXPECT_LT(sc::radial_hausdorff(fixed, sc::orlicz_sum(direct), circle_rule()), 1e-13);
}

TEST(SelfConsistentSum, VolumeCoupledConstantsRecoverHarmonicBlaschke) {
  // Power gauge (n+1)/n with per-body constants V_j^{-n/(n+1)} and the scale
  // constant V^{-n/(n+1)} of the tentative sum volume: the fixed point is the
  // harmonic Blaschke sum.
  const auto& rule = circle_rule();
  const int n = 2;
  const double exponent = -static_cast<double>(n) / (n + 1.0);
  sc::BodyGenerator gen(2, 9009u);
  for (int trial = 0; trial < 3; ++trial) {
    const auto [first, second] = gen.mild_pair();
    const double vol_first = sc::volume(first, rule);
    const double vol_second = sc::volume(second, rule);
    const double q = (n + 1.0) / n;
    sc::SumSpec base{{first, second}, two_powers(q, q)};
    const auto rule_fn = [&](double v) {
      return sc::SumConstants{std::pow(v, exponent),
                              {std::pow(vol_first, exponent), std::pow(vol_second, exponent)}};
    };
    sc::FixedPointTrace trace;
    const auto fixed = sc::self_consistent_orlicz_sum(base, rule_fn,
                                                      {1.0, 1e-12, 200}, rule, &trace);
    EXPECT_TRUE(trace.converged);
    const auto reference = sc::harmonic_blaschke_sum(first, second, rule);
    EXPECT_LT(sc::radial_hausdorff(fixed, reference, rule), 1e-9);
  }
}

TEST(SelfConsistentSum, BallsRecoverRadiusAddition) {
  const auto& rule = circle_rule();
  const int n = 2;
  const double exponent = -static_cast<double>(n) / (n + 1.0);
  const auto first = sc::StarBody::ball(2, 1.0);
  const auto second = sc::StarBody::ball(2, 2.0);
  const double vol_first = sc::volume(first, rule);
  const double vol_second = sc::volume(second, rule);
  const double q = (n + 1.0) / n;
  sc::SumSpec base{{first, second}, two_powers(q, q)};
  const auto fixed = sc::self_consistent_orlicz_sum(
      base,
      [&](double v) {
        return sc::SumConstants{std::pow(v, exponent),
                                {std::pow(vol_first, exponent),
                                 std::pow(vol_second, exponent)}};
      },
      {1.0, 1e-12, 200}, rule);
  auto samples = fixed.samples(rule);
  for (double rho : *samples) {
    ASSERT_NEAR(rho, 3.0, 1e-10);
  }
}

TEST(SelfConsistentSum, IterationCapRaisesWithTrace) {
  sc::BodyGenerator gen(2, 9010u);
  const auto [first, second] = gen.mild_pair();
  const double q = 1.5;
  sc::SumSpec base{{first, second}, two_powers(q, q)};
  const double vol_first = sc::volume(first, circle_rule());
  const double vol_second = sc::volume(second, circle_rule());
  const auto rule_fn = [&](double v) {
    return sc::SumConstants{std::pow(v, -2.0 / 3.0),
                            {std::pow(vol_first, -2.0 / 3.0), std::pow(vol_second, -2.0 / 3.0)}};
  };
  try {
    sc::self_consistent_orlicz_sum(base, rule_fn, {0.5, 1e-14, 2}, circle_rule());
    FAIL() << "expected FixedPointError";
  } catch (const sc::FixedPointError& e) {
    EXPECT_GE(e.volume_trace().size(), 2u);
  }
}

TEST(SelfConsistentSum, ConfigValidation) {
  const auto ball = sc::StarBody::ball(2, 1.0);
  sc::SumSpec base{{ball, ball}, two_powers(2.0, 2.0)};
  const auto id_rule = [](double) { return sc::SumConstants{}; };
  EXPECT_THROW(sc::self_consistent_orlicz_sum(base, nullptr, {}, circle_rule()),
               sc::ConfigError);
  EXPECT_THROW(sc::self_consistent_orlicz_sum(base, id_rule, {0.0, 1e-10, 10}, circle_rule()),
               sc::ConfigError);
  EXPECT_THROW(sc::self_consistent_orlicz_sum(base, id_rule, {0.5, 0.0, 10}, circle_rule()),
               sc::ConfigError);
  EXPECT_THROW(sc::self_consistent_orlicz_sum(base, id_rule, {0.5, 1e-10, 0}, circle_rule()),
               sc::ConfigError);
}
