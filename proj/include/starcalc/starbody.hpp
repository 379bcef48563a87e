// Star bodies, sphere quadrature rules, and the radial metric.
//
// A star body is represented by its radial function: the distance from the
// origin to the boundary along each direction.  Bodies form an immutable DAG
// of nodes (balls, lp balls, linear images, composites added elsewhere); each
// node memoizes its radial samples per quadrature rule so composite solves
// are paid once per (body, rule) pair.
#pragma once

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/detail/gauss_legendre.hpp"
#include "starcalc/detail/parallel.hpp"
#include "starcalc/errors.hpp"
#include "starcalc/linalg.hpp"

namespace starcalc {

inline constexpr double kPi = 3.14159265358979323846;

/// Surface area of the unit sphere boundary in R^dim: 2 pi^(dim/2) / Gamma(dim/2).
inline double sphere_surface_area(int dim) {
  if (dim < 2) throw ConfigError("sphere surface area needs dimension >= 2");
  return 2.0 * std::pow(kPi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

/// A unit vector in R^dim.
class Direction {
 public:
  explicit Direction(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw ConfigError("directions need dimension >= 2");
    double norm_sq = 0.0;
    for (double c : coords_) {
      if (!std::isfinite(c)) throw ConfigError("direction coordinates must be finite");
      norm_sq += c * c;
    }
    const double norm = std::sqrt(norm_sq);
    if (!(norm > 1e-300)) throw ConfigError("cannot normalize the zero vector");
    for (double& c : coords_) c /= norm;
  }

  static Direction from_angle(double theta) {
    return Direction({std::cos(theta), std::sin(theta)});
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<double>& coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  /// Polar angle in the plane (dimension 2 only), in (-pi, pi].
  double angle() const {
    if (dim() != 2) throw ConfigError("angle() is only defined in dimension 2");
    return std::atan2(coords_[1], coords_[0]);
  }

 private:
  std::vector<double> coords_;
};

/// Quadrature rule over the unit sphere.  Weights sum to the sphere's surface
/// area.  Each rule carries a process-unique id used as a sample-cache key.
class SphereRule {
 public:
  enum class Kind { kCircleTrapezoid, kSphereGaussProduct, kMonteCarlo };

  /// Uniform angular trapezoid rule on the circle; exact for trigonometric
  /// polynomials of degree < resolution.
  static SphereRule circle(int resolution) {
    if (resolution < 8) {
      throw ConfigError("circle rule resolution must be at least 8");
    }
    SphereRule rule(2, Kind::kCircleTrapezoid, resolution, 0);
    const double w = 2.0 * kPi / resolution;
    rule.nodes_.reserve(resolution);
    rule.weights_.assign(resolution, w);
    for (int i = 0; i < resolution; ++i) {
      rule.nodes_.push_back(Direction::from_angle(2.0 * kPi * i / resolution));
    }
    return rule;
  }

  /// Product rule on the 2-sphere: Gauss-Legendre in the cosine of the polar
  /// angle (resolution nodes) times a uniform azimuthal grid (2 * resolution
  /// nodes).  Weights sum to 4 pi.
  static SphereRule sphere_product(int resolution) {
    if (resolution < 8) {
      throw ConfigError("sphere product rule resolution must be at least 8");
    }
    SphereRule rule(3, Kind::kSphereGaussProduct, resolution, 0);
    const auto [ct, wt] = detail::gauss_legendre(static_cast<std::size_t>(resolution));
    const int azimuth = 2 * resolution;
    const double az_w = 2.0 * kPi / azimuth;
    rule.nodes_.reserve(static_cast<std::size_t>(resolution) * azimuth);
    rule.weights_.reserve(rule.nodes_.capacity());
    for (int i = 0; i < resolution; ++i) {
      const double cos_theta = ct[static_cast<std::size_t>(i)];
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
      for (int j = 0; j < azimuth; ++j) {
        const double phi_angle = 2.0 * kPi * j / azimuth;
        rule.nodes_.push_back(Direction(
            {sin_theta * std::cos(phi_angle), sin_theta * std::sin(phi_angle), cos_theta}));
        rule.weights_.push_back(wt[static_cast<std::size_t>(i)] * az_w);
      }
    }
    return rule;
  }

  /// Seeded Monte Carlo rule for dimension >= 2: uniformly distributed
  /// directions, equal weights totaling the sphere surface area.
  static SphereRule monte_carlo(int dim, std::size_t count, std::uint64_t seed = 0) {
    if (dim < 2) throw ConfigError("Monte Carlo rule needs dimension >= 2");
    if (count < 16) throw ConfigError("Monte Carlo rule needs at least 16 nodes");
    SphereRule rule(dim, Kind::kMonteCarlo, static_cast<int>(count), seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    rule.nodes_.reserve(count);
    const double w = sphere_surface_area(dim) / static_cast<double>(count);
    rule.weights_.assign(count, w);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<double> v(static_cast<std::size_t>(dim));
      double norm_sq = 0.0;
      do {
        norm_sq = 0.0;
        for (auto& c : v) {
          c = gauss(rng);
          norm_sq += c * c;
        }
      } while (norm_sq < 1e-12);
      rule.nodes_.push_back(Direction(std::move(v)));
    }
    return rule;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return nodes_.size(); }
  const Direction& node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  Kind kind() const { return kind_; }
  int resolution() const { return resolution_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t id() const { return id_; }

  double total_weight() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
  }

 private:
  SphereRule(int dim, Kind kind, int resolution, std::uint64_t seed)
      : dim_(dim), kind_(kind), resolution_(resolution), seed_(seed), id_(allocate_id()) {}

  static std::uint64_t allocate_id() {
    static std::atomic<std::uint64_t> next{1};
    return next.fetch_add(1);
  }

  int dim_;
  Kind kind_;
  int resolution_;
  std::uint64_t seed_;
  std::uint64_t id_;
  std::vector<Direction> nodes_;
  std::vector<double> weights_;
};

/// Default rule for a dimension: circle trapezoid (dim 2), Gauss product
/// (dim 3), Monte Carlo with resolution^2 nodes and seed 0 (dim >= 4).
inline SphereRule build_quadrature(int dim, int resolution) {
  if (dim == 2) return SphereRule::circle(resolution);
  if (dim == 3) return SphereRule::sphere_product(resolution);
  if (dim >= 4) {
    const std::size_t count = static_cast<std::size_t>(resolution) *
                              static_cast<std::size_t>(resolution);
    return SphereRule::monte_carlo(dim, count, 0);
  }
  throw ConfigError("quadrature needs dimension >= 2");
}

inline SphereRule build_quadrature_mc(int dim, std::size_t count, std::uint64_t seed = 0) {
  return SphereRule::monte_carlo(dim, count, seed);
}

/// Integrates f over the sphere with the given rule.  Function values are
/// computed in parallel but summed in node order, so results are identical
/// regardless of thread count.
template <class F>
double integrate_sphere(const SphereRule& rule, F&& f) {
  std::vector<double> values(rule.size());
  detail::parallel_for(rule.size(), [&](std::size_t i) { values[i] = f(rule.node(i)); });
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw IntegrandError("integrand is non-finite at node " + std::to_string(i));
    }
    total += rule.weight(i) * values[i];
  }
  return total;
}

/// Weighted sum of precomputed node values against the rule's weights.
inline double integrate_samples(const SphereRule& rule, std::span<const double> values) {
  if (values.size() != rule.size()) {
    throw ConfigError("sample count does not match the quadrature rule");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw IntegrandError("integrand is non-finite at node " + std::to_string(i));
    }
    total += rule.weight(i) * values[i];
  }
  return total;
}

namespace detail {

/// Immutable node in the body DAG.  Subclasses implement radial_impl; the
/// base supplies validation and the per-rule sample cache.
class BodyNode {
 public:
  explicit BodyNode(int dim) : dim_(dim) {
    if (dim < 2) throw ConfigError("star bodies need dimension >= 2");
  }
  virtual ~BodyNode() = default;

  int dim() const { return dim_; }

  double checked_radial(const Direction& u) const {
    if (u.dim() != dim_) {
      throw ConfigError("direction dimension " + std::to_string(u.dim()) +
                        " does not match body dimension " + std::to_string(dim_));
    }
    const double rho = radial_impl(u);
    if (!std::isfinite(rho) || !(rho > 1e-300)) {
      throw DegenerateBodyError("radial function is not strictly positive and finite");
    }
    return rho;
  }

  /// Radial samples at the rule's nodes, memoized per rule id.
  std::shared_ptr<const std::vector<double>> samples(const SphereRule& rule) const {
    if (rule.dim() != dim_) {
      throw ConfigError("quadrature rule dimension does not match body dimension");
    }
    {
      std::lock_guard<std::mutex> lock(cache_mutex_);
      auto it = cache_.find(rule.id());
      if (it != cache_.end()) return it->second;
    }
    auto computed = std::make_shared<std::vector<double>>(compute_samples(rule));
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, inserted] = cache_.emplace(rule.id(), std::move(computed));
    return it->second;
  }

 protected:
  virtual double radial_impl(const Direction& u) const = 0;

  /// Default sampling: evaluate the radial function at every node in parallel.
  virtual std::vector<double> compute_samples(const SphereRule& rule) const {
    std::vector<double> out(rule.size());
    parallel_for(rule.size(), [&](std::size_t i) { out[i] = checked_radial(rule.node(i)); });
    return out;
  }

 private:
  int dim_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::uint64_t, std::shared_ptr<const std::vector<double>>> cache_;
};

class BallNode final : public BodyNode {
 public:
  BallNode(int dim, double r) : BodyNode(dim), r_(r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw ConfigError("ball radius must be positive and finite");
    }
  }

 protected:
  double radial_impl(const Direction&) const override { return r_; }

 private:
  double r_;
};

class LpBallNode final : public BodyNode {
 public:
  LpBallNode(int dim, double p, double scale) : BodyNode(dim), p_(p), scale_(scale) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ConfigError("lp ball exponent must be positive and finite");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
      throw ConfigError("lp ball scale must be positive and finite");
    }
  }

 protected:
  // The boundary satisfies ||x||_p = scale, so along a Euclidean unit vector
  // u the radius is scale / ||u||_p.
  double radial_impl(const Direction& u) const override {
    double s = 0.0;
    for (double c : u.coords()) s += std::pow(std::fabs(c), p_);
    return scale_ / std::pow(s, 1.0 / p_);
  }

 private:
  double p_;
  double scale_;
};

class DilateNode final : public BodyNode {
 public:
  DilateNode(double c, std::shared_ptr<const BodyNode> body)
      : BodyNode(body->dim()), c_(c), body_(std::move(body)) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw ConfigError("dilation factor must be positive and finite");
    }
  }

 protected:
  double radial_impl(const Direction& u) const override {
    return c_ * body_->checked_radial(u);
  }

  std::vector<double> compute_samples(const SphereRule& rule) const override {
    auto base = body_->samples(rule);
    std::vector<double> out(base->size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c_ * (*base)[i];
    return out;
  }

 private:
  double c_;
  std::shared_ptr<const BodyNode> body_;
};

class LinearImageNode final : public BodyNode {
 public:
  LinearImageNode(Matrix a, std::shared_ptr<const BodyNode> body)
      : BodyNode(body->dim()), a_(std::move(a)), body_(std::move(body)) {
    if (a_.size() != static_cast<std::size_t>(dim())) {
      throw ConfigError("linear image matrix size must match the body dimension");
    }
    a_inv_ = a_.inverse();
  }

 protected:
  // For the image A K: the point r u lies on the boundary iff A^{-1}(r u)
  // lies on the boundary of K, giving r = rho_K(v / |v|) / |v| with
  // v = A^{-1} u.
  double radial_impl(const Direction& u) const override {
    std::vector<double> v = a_inv_.apply(u.coords());
    double norm_sq = 0.0;
    for (double c : v) norm_sq += c * c;
    const double norm = std::sqrt(norm_sq);
    if (!(norm > 1e-300)) {
      throw DegenerateBodyError("linear image produced a vanishing preimage direction");
    }
    return body_->checked_radial(Direction(std::move(v))) / norm;
  }

 private:
  Matrix a_;
  Matrix a_inv_;
  std::shared_ptr<const BodyNode> body_;
};

class RadialTrigPolyNode final : public BodyNode {
 public:
  RadialTrigPolyNode(double a0, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs)
      : BodyNode(2),
        a0_(a0),
        cos_coeffs_(std::move(cos_coeffs)),
        sin_coeffs_(std::move(sin_coeffs)) {
    if (!std::isfinite(a0)) throw ConfigError("trig polynomial constant must be finite");
    for (double c : cos_coeffs_) {
      if (!std::isfinite(c)) throw ConfigError("trig polynomial coefficients must be finite");
    }
    for (double c : sin_coeffs_) {
      if (!std::isfinite(c)) throw ConfigError("trig polynomial coefficients must be finite");
    }
    // Reject polynomials that dip to (or below) zero anywhere on a dense grid.
    constexpr int kGrid = 4096;
    for (int i = 0; i < kGrid; ++i) {
      const double theta = 2.0 * kPi * i / kGrid;
      if (!(value_at(theta) > 1e-9)) {
        throw DegenerateBodyError(
            "trig polynomial radial function must stay strictly positive");
      }
    }
  }

 protected:
  double radial_impl(const Direction& u) const override { return value_at(u.angle()); }

 private:
  // Coefficient index i corresponds to harmonic i + 1.
  double value_at(double theta) const {
    double v = a0_;
    for (std::size_t i = 0; i < cos_coeffs_.size(); ++i) {
      v += cos_coeffs_[i] * std::cos((static_cast<double>(i) + 1.0) * theta);
    }
    for (std::size_t i = 0; i < sin_coeffs_.size(); ++i) {
      v += sin_coeffs_[i] * std::sin((static_cast<double>(i) + 1.0) * theta);
    }
    return v;
  }

  double a0_;
  std::vector<double> cos_coeffs_;
  std::vector<double> sin_coeffs_;
};

}  // namespace detail

/// Handle to an immutable star body.  Cheap to copy; all state is shared.
class StarBody {
 public:
  explicit StarBody(std::shared_ptr<const detail::BodyNode> node) : node_(std::move(node)) {
    if (!node_) throw ConfigError("star body handle cannot be empty");
  }

  static StarBody ball(int dim, double r) {
    return StarBody(std::make_shared<detail::BallNode>(dim, r));
  }

  static StarBody lp_ball(int dim, double p, double scale = 1.0) {
    return StarBody(std::make_shared<detail::LpBallNode>(dim, p, scale));
  }

  static StarBody dilate(double c, const StarBody& body) {
    return StarBody(std::make_shared<detail::DilateNode>(c, body.node_));
  }

  static StarBody linear_image(const Matrix& a, const StarBody& body) {
    return StarBody(std::make_shared<detail::LinearImageNode>(a, body.node_));
  }

  static StarBody radial_trig_poly(double a0, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs) {
    return StarBody(std::make_shared<detail::RadialTrigPolyNode>(a0, std::move(cos_coeffs),
                                                                 std::move(sin_coeffs)));
  }

  int dim() const { return node_->dim(); }

  /// Radial function: distance from the origin to the boundary along u.
  double radial(const Direction& u) const { return node_->checked_radial(u); }

  /// Memoized radial samples at the rule's nodes.
  std::shared_ptr<const std::vector<double>> samples(const SphereRule& rule) const {
    return node_->samples(rule);
  }

  const std::shared_ptr<const detail::BodyNode>& node() const { return node_; }

 private:
  std::shared_ptr<const detail::BodyNode> node_;
};

/// Sup distance between radial functions over the rule's nodes.
inline double radial_hausdorff(const StarBody& k, const StarBody& l, const SphereRule& rule) {
  if (k.dim() != l.dim()) {
    throw ConfigError("radial distance requires bodies of equal dimension");
  }
  auto a = k.samples(rule);
  auto b = l.samples(rule);
  double worst = 0.0;
  for (std::size_t i = 0; i < a->size(); ++i) {
    worst = std::max(worst, std::fabs((*a)[i] - (*b)[i]));
  }
  return worst;
}

/// Volume via the polar formula: (1/n) * integral of rho^n over the sphere.
inline double volume(const StarBody& body, const SphereRule& rule) {
  auto rho = body.samples(rule);
  const int n = body.dim();
  double total = 0.0;
  for (std::size_t i = 0; i < rho->size(); ++i) {
    total += rule.weight(i) * std::pow((*rho)[i], n);
  }
  return total / n;
}

}  // namespace starcalc
