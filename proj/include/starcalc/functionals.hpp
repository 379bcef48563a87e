// Volume-type functionals: dual mixed volumes, their lp and Orlicz forms,
// the normalized dual cone measure, and the dual projection norm.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/additions.hpp"
#include "starcalc/detail/rootfind.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/starbody.hpp"

namespace starcalc {

/// (1/n) * integral of rho_K^(n-i) * rho_L^i with integer index 0 <= i <= n.
inline double dual_mixed_volume_i(const StarBody& k, const StarBody& l, int i,
                                  const SphereRule& rule) {
  if (k.dim() != l.dim()) {
    throw ConfigError("dual mixed volume requires bodies of equal dimension");
  }
  const int n = k.dim();
  if (i < 0 || i > n) {
    throw ConfigError("dual mixed volume index must lie in [0, n]");
  }
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double total = 0.0;
  for (std::size_t idx = 0; idx < rule.size(); ++idx) {
    total += rule.weight(idx) * std::pow((*a)[idx], n - i) * std::pow((*b)[idx], i);
  }
  return total / n;
}

/// (1/n) * integral of the product of all n radial functions; takes exactly
/// as many bodies as the dimension.
inline double dual_mixed_volume_general(std::span<const StarBody> bodies,
                                        const SphereRule& rule) {
  if (bodies.empty()) throw ConfigError("dual mixed volume needs at least one body");
  const int n = bodies.front().dim();
  if (bodies.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("general dual mixed volume needs exactly n bodies in dimension n");
  }
  std::vector<std::shared_ptr<const std::vector<double>>> rho(bodies.size());
  for (std::size_t j = 0; j < bodies.size(); ++j) {
    if (bodies[j].dim() != n) {
      throw ConfigError("dual mixed volume requires bodies of equal dimension");
    }
    rho[j] = bodies[j].samples(rule);
  }
  double total = 0.0;
  for (std::size_t idx = 0; idx < rule.size(); ++idx) {
    double prod = 1.0;
    for (std::size_t j = 0; j < bodies.size(); ++j) prod *= (*rho[j])[idx];
    total += rule.weight(idx) * prod;
  }
  return total / n;
}

/// (1/n) * integral of rho_K^(n+p) * rho_L^(-p) with p >= 1.
inline double lp_dual_mixed_volume(const StarBody& k, const StarBody& l, double p,
                                   const SphereRule& rule) {
  if (k.dim() != l.dim()) {
    throw ConfigError("dual mixed volume requires bodies of equal dimension");
  }
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ConfigError("lp dual mixed volume exponent must satisfy p >= 1");
  }
  const int n = k.dim();
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double total = 0.0;
  for (std::size_t idx = 0; idx < rule.size(); ++idx) {
    total += rule.weight(idx) * std::pow((*a)[idx], static_cast<double>(n) + p) *
             std::pow((*b)[idx], -p);
  }
  return total / n;
}

/// (1/n) * integral of phi(k2 rho_L^n / (k1 rho_K^n)) * rho_K^n.
inline double orlicz_dual_mixed_volume(const StarBody& k, const StarBody& l,
                                       const OrliczFunction1& phi, double k1, double k2,
                                       const SphereRule& rule) {
  if (k.dim() != l.dim()) {
    throw ConfigError("dual mixed volume requires bodies of equal dimension");
  }
  if (!(k1 > 0.0) || !(k2 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2)) {
    throw ConfigError("dual mixed volume constants must be positive and finite");
  }
  const int n = k.dim();
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double total = 0.0;
  for (std::size_t idx = 0; idx < rule.size(); ++idx) {
    const double rk_n = std::pow((*a)[idx], n);
    const double ratio = k2 * std::pow((*b)[idx], n) / (k1 * rk_n);
    double value;
    try {
      value = phi(ratio);
    } catch (const DomainError&) {
      throw DomainError("gauge argument leaves the domain at node " + std::to_string(idx) +
                        "; the bodies violate the functional's hypothesis");
    }
    total += rule.weight(idx) * value * rk_n;
  }
  return total / n;
}

/// Normalized dual cone measure of a body: node mass proportional to rho^n,
/// total mass 1.
class DualConeMeasure {
 public:
  DualConeMeasure(StarBody body, SphereRule rule)
      : body_(std::move(body)), rule_(std::move(rule)) {
    samples_ = body_.samples(rule_);
    volume_ = 0.0;
    const int n = body_.dim();
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      volume_ += rule_.weight(i) * std::pow((*samples_)[i], n);
    }
    volume_ /= n;
  }

  const StarBody& body() const { return body_; }
  const SphereRule& rule() const { return rule_; }
  double body_volume() const { return volume_; }

  /// Density against the sphere rule at an arbitrary direction.
  double density(const Direction& u) const {
    const int n = body_.dim();
    return std::pow(body_.radial(u), n) / (n * volume_);
  }

  /// Mass carried by node i of the rule.
  double node_mass(std::size_t i) const {
    const int n = body_.dim();
    return rule_.weight(i) * std::pow((*samples_)[i], n) / (n * volume_);
  }

  /// Expectation of f under the measure.
  template <class F>
  double integrate(F&& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      const double v = f(rule_.node(i));
      if (!std::isfinite(v)) {
        throw IntegrandError("integrand is non-finite at node " + std::to_string(i));
      }
      total += node_mass(i) * v;
    }
    return total;
  }

 private:
  StarBody body_;
  SphereRule rule_;
  std::shared_ptr<const std::vector<double>> samples_;
  double volume_;
};

/// Dual projection norm: the unique lambda > 0 with
///   E[ phi(k2 rho_L^n / (k1 lambda^n rho_K^n)) ] = 1
/// under the dual cone measure of K.
inline double orlicz_dual_projection_norm(const StarBody& k, const StarBody& l,
                                          const OrliczFunction1& phi, double k1, double k2,
                                          const SphereRule& rule,
                                          const SolveOptions& opts = {}) {
  if (k.dim() != l.dim()) {
    throw ConfigError("projection norm requires bodies of equal dimension");
  }
  if (!(k1 > 0.0) || !(k2 > 0.0) || !std::isfinite(k1) || !std::isfinite(k2)) {
    throw ConfigError("projection norm constants must be positive and finite");
  }
  const int n = k.dim();
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double vol_k = 0.0;
  double vol_l = 0.0;
  std::vector<double> ratio(rule.size());  // k2 rho_L^n / (k1 rho_K^n) per node
  std::vector<double> mass(rule.size());   // unnormalized cone-measure mass of K
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double rk_n = std::pow((*a)[i], n);
    const double rl_n = std::pow((*b)[i], n);
    vol_k += rule.weight(i) * rk_n;
    vol_l += rule.weight(i) * rl_n;
    ratio[i] = k2 * rl_n / (k1 * rk_n);
    mass[i] = rule.weight(i) * rk_n;
  }
  vol_k /= n;
  vol_l /= n;

  // The gauge argument scales by lambda^{-n}; with a finite domain bound the
  // level must stay above the largest ratio divided by the bound.
  double lambda_min = 0.0;
  const double bound = phi.domain_bound();
  if (std::isfinite(bound)) {
    double worst = 0.0;
    for (double r : ratio) worst = std::max(worst, r / bound);
    lambda_min = std::pow(worst, 1.0 / n);
  }

  auto expectation = [&](double lambda) -> double {
    const double level = std::pow(lambda, n);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      double v;
      try {
        v = phi(ratio[i] / level);
      } catch (const DomainError&) {
        return std::numeric_limits<double>::infinity();
      }
      total += mass[i] * v;
    }
    return total / (n * vol_k);
  };

  double guess = std::pow(k2 * vol_l / (k1 * vol_k), 1.0 / static_cast<double>(n));
  if (!(guess > lambda_min)) guess = lambda_min * 2.0;
  return detail::solve_decreasing_equals_one(expectation, guess, lambda_min,
                                             detail::to_root_options(opts));
}

}  // namespace starcalc
