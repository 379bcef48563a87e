// Addition operations on star bodies.
//
// The central operation is the Orlicz radial sum: for each direction the
// radial value of the sum is defined implicitly by driving a multi-variable
// gauge of the scaled summand radii to 1.  Classical constructions (lp radial
// sum, radial linear combination, harmonic Blaschke sums) are provided in
// closed form, and a fixed-point driver resolves constants that depend on the
// volume of the sum itself.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/detail/parallel.hpp"
#include "starcalc/detail/rootfind.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/starbody.hpp"

namespace starcalc {

/// Controls for the per-direction implicit solves.
struct SolveOptions {
  double rel_tol = 1e-12;  ///< relative bracket width; 0 bisects to machine precision
  int max_growth = 128;    ///< bracket expansion/contraction step cap
  int max_iter = 200;      ///< bisection iteration cap
};

/// Input to the Orlicz radial sum: bodies K_1..K_m, an m-variable gauge, a
/// global constant k > 0 and per-body constants ks_j > 0 (default all 1).
struct SumSpec {
  std::vector<StarBody> bodies;
  OrliczFunctionM phi;
  double k = 1.0;
  std::vector<double> ks;  ///< empty means all ones
};

namespace detail {

inline RootOptions to_root_options(const SolveOptions& opts) {
  RootOptions r;
  r.rel_tol = opts.rel_tol;
  r.max_growth = opts.max_growth;
  r.max_iter = opts.max_iter;
  return r;
}

/// Body defined by the implicit gauge equation.  The n-th power of the
/// radial value is the unique level at which the gauge of the scaled summand
/// radii equals 1.
class OrliczSumNode final : public BodyNode {
 public:
  OrliczSumNode(std::vector<std::shared_ptr<const BodyNode>> bodies, OrliczFunctionM phi,
                double k, std::vector<double> ks, SolveOptions opts)
      : BodyNode(bodies.empty() ? 2 : bodies.front()->dim()),
        bodies_(std::move(bodies)),
        phi_(std::move(phi)),
        k_(k),
        ks_(std::move(ks)),
        opts_(opts) {
    if (bodies_.empty()) throw ConfigError("Orlicz sum needs at least one body");
    for (const auto& b : bodies_) {
      if (b->dim() != dim()) {
        throw ConfigError("Orlicz sum bodies must share one dimension");
      }
    }
    if (phi_.arity() != bodies_.size()) {
      throw ConfigError("gauge arity must equal the number of bodies");
    }
    if (!(k_ > 0.0) || !std::isfinite(k_)) {
      throw ConfigError("Orlicz sum constant k must be positive and finite");
    }
    if (ks_.empty()) ks_.assign(bodies_.size(), 1.0);
    if (ks_.size() != bodies_.size()) {
      throw ConfigError("Orlicz sum needs one constant per body");
    }
    for (double kj : ks_) {
      if (!(kj > 0.0) || !std::isfinite(kj)) {
        throw ConfigError("Orlicz sum per-body constants must be positive and finite");
      }
    }
  }

  /// Solves the implicit equation given the summand radii at one direction.
  double solve_at(std::span<const double> rho) const {
    const double n = static_cast<double>(dim());
    const std::size_t m = bodies_.size();
    std::vector<double> c(m);
    double level_guess = 0.0;
    double level_min = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      c[j] = ks_[j] * std::pow(rho[j], n) / k_;
      if (!phi_.coordinate_active(j)) continue;
      level_guess += c[j];
      const double bound = phi_.domain_bound(j);
      if (std::isfinite(bound)) {
        level_min = std::max(level_min, c[j] / bound);
      }
    }
    if (!(level_guess > level_min * (1.0 + 1e-9))) {
      level_guess = level_min * 2.0;
    }
    std::vector<double> x(m);
    auto gauge_at_level = [&](double level) -> double {
      for (std::size_t j = 0; j < m; ++j) x[j] = c[j] / level;
      try {
        return phi_(x);
      } catch (const DomainError&) {
        // Rounding pushed a coordinate onto its bound: treat as above level 1.
        return std::numeric_limits<double>::infinity();
      }
    };
    const double level =
        solve_decreasing_equals_one(gauge_at_level, level_guess, level_min,
                                    to_root_options(opts_));
    return std::pow(level, 1.0 / n);
  }

  const std::vector<std::shared_ptr<const BodyNode>>& summands() const { return bodies_; }
  const OrliczFunctionM& gauge() const { return phi_; }
  double k() const { return k_; }
  const std::vector<double>& ks() const { return ks_; }

 protected:
  double radial_impl(const Direction& u) const override {
    std::vector<double> rho(bodies_.size());
    for (std::size_t j = 0; j < bodies_.size(); ++j) rho[j] = bodies_[j]->checked_radial(u);
    return solve_at(rho);
  }

  std::vector<double> compute_samples(const SphereRule& rule) const override {
    std::vector<std::shared_ptr<const std::vector<double>>> kid(bodies_.size());
    for (std::size_t j = 0; j < bodies_.size(); ++j) kid[j] = bodies_[j]->samples(rule);
    std::vector<double> out(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) {
      std::vector<double> rho(bodies_.size());
      for (std::size_t j = 0; j < bodies_.size(); ++j) rho[j] = (*kid[j])[i];
      out[i] = solve_at(rho);
    });
    return out;
  }

 private:
  std::vector<std::shared_ptr<const BodyNode>> bodies_;
  OrliczFunctionM phi_;
  double k_;
  std::vector<double> ks_;
  SolveOptions opts_;
};

/// rho = (rho_K^p + rho_L^p)^(1/p).
class LpRadialSumNode final : public BodyNode {
 public:
  LpRadialSumNode(std::shared_ptr<const BodyNode> k, std::shared_ptr<const BodyNode> l,
                  double p)
      : BodyNode(k->dim()), k_(std::move(k)), l_(std::move(l)), p_(p) {
    if (l_->dim() != dim()) throw ConfigError("lp radial sum bodies must share one dimension");
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ConfigError("lp radial sum exponent must be positive and finite");
    }
  }

 protected:
  double radial_impl(const Direction& u) const override {
    return combine(k_->checked_radial(u), l_->checked_radial(u));
  }

  std::vector<double> compute_samples(const SphereRule& rule) const override {
    auto a = k_->samples(rule);
    auto b = l_->samples(rule);
    std::vector<double> out(rule.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = combine((*a)[i], (*b)[i]);
    return out;
  }

 private:
  double combine(double ra, double rb) const {
    return std::pow(std::pow(ra, p_) + std::pow(rb, p_), 1.0 / p_);
  }

  std::shared_ptr<const BodyNode> k_;
  std::shared_ptr<const BodyNode> l_;
  double p_;
};

/// rho = lambda * rho_K + mu * rho_L.
class RadialCombNode final : public BodyNode {
 public:
  RadialCombNode(std::shared_ptr<const BodyNode> k, std::shared_ptr<const BodyNode> l,
                 double lambda, double mu)
      : BodyNode(k->dim()), k_(std::move(k)), l_(std::move(l)), lambda_(lambda), mu_(mu) {
    if (l_->dim() != dim()) {
      throw ConfigError("radial combination bodies must share one dimension");
    }
    if (std::isnan(lambda) || std::isnan(mu) || lambda < 0.0 || mu < 0.0) {
      throw ConfigError("radial combination coefficients must be non-negative");
    }
    if (!(lambda + mu > 0.0)) {
      throw ConfigError("radial combination needs a positive coefficient");
    }
  }

 protected:
  double radial_impl(const Direction& u) const override {
    return lambda_ * k_->checked_radial(u) + mu_ * l_->checked_radial(u);
  }

  std::vector<double> compute_samples(const SphereRule& rule) const override {
    auto a = k_->samples(rule);
    auto b = l_->samples(rule);
    std::vector<double> out(rule.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = lambda_ * (*a)[i] + mu_ * (*b)[i];
    }
    return out;
  }

 private:
  std::shared_ptr<const BodyNode> k_;
  std::shared_ptr<const BodyNode> l_;
  double lambda_;
  double mu_;
};

/// Harmonic Blaschke family: rho^(n+p) / V of the sum equals the sum of the
/// summands' rho^(n+p) / V.  Volumes are frozen at construction so the body
/// evaluates pointwise at any direction afterwards.
class LpHarmonicBlaschkeNode final : public BodyNode {
 public:
  LpHarmonicBlaschkeNode(std::shared_ptr<const BodyNode> k, std::shared_ptr<const BodyNode> l,
                         double p, double vol_k, double vol_l, double vol_sum)
      : BodyNode(k->dim()),
        k_(std::move(k)),
        l_(std::move(l)),
        p_(p),
        vol_k_(vol_k),
        vol_l_(vol_l),
        vol_sum_(vol_sum) {}

  double sum_volume() const { return vol_sum_; }

 protected:
  double radial_impl(const Direction& u) const override {
    return combine(k_->checked_radial(u), l_->checked_radial(u));
  }

  std::vector<double> compute_samples(const SphereRule& rule) const override {
    auto a = k_->samples(rule);
    auto b = l_->samples(rule);
    std::vector<double> out(rule.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = combine((*a)[i], (*b)[i]);
    return out;
  }

 private:
  double combine(double ra, double rb) const {
    const double np = static_cast<double>(dim()) + p_;
    const double density = std::pow(ra, np) / vol_k_ + std::pow(rb, np) / vol_l_;
    return std::pow(vol_sum_ * density, 1.0 / np);
  }

  std::shared_ptr<const BodyNode> k_;
  std::shared_ptr<const BodyNode> l_;
  double p_;
  double vol_k_;
  double vol_l_;
  double vol_sum_;
};

}  // namespace detail

/// Orlicz radial sum of the spec's bodies under its gauge and constants.
inline StarBody orlicz_sum(const SumSpec& spec, const SolveOptions& opts = {}) {
  std::vector<std::shared_ptr<const detail::BodyNode>> nodes;
  nodes.reserve(spec.bodies.size());
  for (const auto& b : spec.bodies) nodes.push_back(b.node());
  return StarBody(std::make_shared<detail::OrliczSumNode>(std::move(nodes), spec.phi, spec.k,
                                                          spec.ks, opts));
}

/// Largest deviation of the defining gauge equation from 1 across the rule's
/// nodes when `candidate` is plugged in as the sum.
inline double orlicz_sum_residual(const StarBody& candidate, const SumSpec& spec,
                                  const SphereRule& rule) {
  const std::size_t m = spec.bodies.size();
  if (m == 0) throw ConfigError("residual check needs at least one summand");
  if (spec.phi.arity() != m) throw ConfigError("gauge arity must equal the number of bodies");
  std::vector<double> ks = spec.ks.empty() ? std::vector<double>(m, 1.0) : spec.ks;
  if (ks.size() != m) throw ConfigError("residual check needs one constant per body");
  const double n = static_cast<double>(candidate.dim());
  auto cand = candidate.samples(rule);
  std::vector<std::shared_ptr<const std::vector<double>>> kid(m);
  for (std::size_t j = 0; j < m; ++j) kid[j] = spec.bodies[j].samples(rule);
  double worst = 0.0;
  std::vector<double> x(m);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double level = std::pow((*cand)[i], n);
    for (std::size_t j = 0; j < m; ++j) {
      x[j] = ks[j] * std::pow((*kid[j])[i], n) / (spec.k * level);
    }
    worst = std::max(worst, std::fabs(spec.phi(x) - 1.0));
  }
  return worst;
}

/// Two-body Orlicz combination: gauge alpha * phi1(x1) + beta * phi2(x2).
inline StarBody orlicz_linear_comb(const StarBody& k_body, const StarBody& l_body,
                                   const OrliczFunction1& phi1, const OrliczFunction1& phi2,
                                   double alpha, double beta, double k = 1.0, double k1 = 1.0,
                                   double k2 = 1.0, const SolveOptions& opts = {}) {
  if (std::isnan(alpha) || std::isnan(beta) || alpha < 0.0 || beta < 0.0) {
    throw ConfigError("combination coefficients must be non-negative");
  }
  if (!(alpha + beta > 0.0)) {
    throw ConfigError("combination needs at least one positive coefficient");
  }
  SumSpec spec{
      {k_body, l_body},
      OrliczFunctionM::sum({{phi1, alpha}, {phi2, beta}}),
      k,
      {k1, k2},
  };
  return orlicz_sum(spec, opts);
}

inline StarBody lp_radial_sum(const StarBody& k, const StarBody& l, double p) {
  return StarBody(std::make_shared<detail::LpRadialSumNode>(k.node(), l.node(), p));
}

inline StarBody radial_minkowski_comb(const StarBody& k, const StarBody& l, double lambda,
                                      double mu) {
  return StarBody(std::make_shared<detail::RadialCombNode>(k.node(), l.node(), lambda, mu));
}

/// lp harmonic Blaschke sum (p >= 1).  The sum's volume is fixed by requiring
/// that rho^(n+p)/V be additive; integrals are taken with the given rule.
inline StarBody lp_harmonic_blaschke_sum(const StarBody& k, const StarBody& l, double p,
                                         const SphereRule& rule) {
  if (k.dim() != l.dim()) {
    throw ConfigError("harmonic Blaschke sum bodies must share one dimension");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ConfigError("harmonic Blaschke exponent must satisfy p >= 1");
  }
  const int n = k.dim();
  const double np = static_cast<double>(n) + p;
  const double vol_k = volume(k, rule);
  const double vol_l = volume(l, rule);
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double density = std::pow((*a)[i], np) / vol_k + std::pow((*b)[i], np) / vol_l;
    integral += rule.weight(i) * std::pow(density, static_cast<double>(n) / np);
  }
  integral /= n;
  // Volume of the sum from the normalization identity: V = I^((n+p)/p).
  const double vol_sum = std::pow(integral, np / p);
  return StarBody(std::make_shared<detail::LpHarmonicBlaschkeNode>(k.node(), l.node(), p,
                                                                   vol_k, vol_l, vol_sum));
}

inline StarBody harmonic_blaschke_sum(const StarBody& k, const StarBody& l,
                                      const SphereRule& rule) {
  return lp_harmonic_blaschke_sum(k, l, 1.0, rule);
}

/// Constants produced by a volume-dependent normalization rule.
struct SumConstants {
  double k = 1.0;
  std::vector<double> ks;  ///< empty means all ones
};

struct FixedPointConfig {
  double damping = 0.5;      ///< weight of the freshly computed volume
  double tolerance = 1e-10;  ///< relative volume change declaring convergence
  int max_iterations = 200;
};

struct FixedPointTrace {
  std::vector<double> volumes;
  int iterations = 0;
  bool converged = false;
};

/// Resolves an Orlicz sum whose constants depend on the volume of the sum
/// itself.  `constants_rule` maps a tentative sum volume to the constants;
/// iteration starts from the total volume of the summands and damps updates.
/// A rule that returns identical constants for successive volumes is detected
/// and accepted after a single solve.
inline StarBody self_consistent_orlicz_sum(const SumSpec& base,
                                           const std::function<SumConstants(double)>& constants_rule,
                                           const FixedPointConfig& cfg, const SphereRule& rule,
                                           FixedPointTrace* trace = nullptr,
                                           const SolveOptions& opts = {}) {
  if (!constants_rule) throw ConfigError("self-consistent sum needs a constants rule");
  if (!(cfg.damping > 0.0) || cfg.damping > 1.0) {
    throw ConfigError("fixed-point damping must lie in (0, 1]");
  }
  if (!(cfg.tolerance > 0.0)) throw ConfigError("fixed-point tolerance must be positive");
  if (cfg.max_iterations < 1) throw ConfigError("fixed-point iteration cap must be positive");

  auto apply_constants = [&](const SumConstants& c) {
    if (!(c.k > 0.0) || !std::isfinite(c.k)) {
      throw ConfigError("constants rule produced a non-positive k");
    }
    SumSpec spec = base;
    spec.k = c.k;
    spec.ks = c.ks;
    return orlicz_sum(spec, opts);
  };
  auto same_constants = [](const SumConstants& a, const SumConstants& b) {
    if (a.k != b.k) return false;
    const std::size_t m = std::max(a.ks.size(), b.ks.size());
    for (std::size_t j = 0; j < m; ++j) {
      const double aj = j < a.ks.size() ? a.ks[j] : 1.0;
      const double bj = j < b.ks.size() ? b.ks[j] : 1.0;
      if (aj != bj) return false;
    }
    return true;
  };

  double v = 0.0;
  for (const auto& b : base.bodies) v += volume(b, rule);
  FixedPointTrace local;
  FixedPointTrace& tr = trace ? *trace : local;
  tr.volumes.clear();
  tr.volumes.push_back(v);
  tr.converged = false;

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const SumConstants constants = constants_rule(v);
    StarBody candidate = apply_constants(constants);
    const double v_new = volume(candidate, rule);
    tr.volumes.push_back(v_new);
    tr.iterations = it;
    const double scale = std::max(1.0, std::fabs(v_new));
    if (std::fabs(v_new - v) <= cfg.tolerance * scale ||
        same_constants(constants, constants_rule(v_new))) {
      tr.converged = true;
      return candidate;
    }
    v = (1.0 - cfg.damping) * v + cfg.damping * v_new;
  }
  throw FixedPointError("self-consistent sum did not converge within the iteration cap",
                        tr.volumes);
}

}  // namespace starcalc
