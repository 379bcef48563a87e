// Orlicz gauge functions: single-variable and multi-variable flavors.
//
// OrliczFunction1 models a convex, strictly increasing function with value 0
// at 0, defined on [0, b) for a domain bound b (possibly infinite).  Built-in
// kinds cover power functions t^q and the -log(1 - t) family; arbitrary
// callables are accepted through the custom constructor and validated by
// sampling.  OrliczFunctionM models a multi-variable gauge, most commonly the
// weighted sum of single-variable gauges used by the addition solver.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "starcalc/errors.hpp"

namespace starcalc {

inline constexpr double kInfiniteBound = std::numeric_limits<double>::infinity();

/// Single-variable Orlicz gauge.
class OrliczFunction1 {
 public:
  /// Hooks for user-supplied gauges.  `derivative` may be empty (numeric
  /// differencing is used).  `domain_bound` is the sup of the domain; the
  /// function must diverge or stay increasing up to it.  `convex_increasing`
  /// declares membership in the standard gauge class (value 0 at 0, value 1
  /// at 1, convex and strictly increasing on all of [0, inf)).
  struct CustomSpec {
    std::function<double(double)> eval;
    std::function<double(double)> derivative;  // optional
    double domain_bound = kInfiniteBound;
    bool convex_increasing = true;
    std::string label = "custom";
  };

  enum class Kind { kPower, kNegLog, kCustom };

  /// t^q with q >= 1 (q = 1 is the linear edge case).
  static OrliczFunction1 power(double q) {
    if (!(q >= 1.0) || !std::isfinite(q)) {
      throw ConfigError("power gauge exponent must satisfy q >= 1");
    }
    OrliczFunction1 f;
    f.kind_ = Kind::kPower;
    f.q_ = q;
    f.bound_ = kInfiniteBound;
    f.in_class_ = true;
    return f;
  }

  /// -log(1 - t) on [0, 1); when normalized, scaled by 1/log 2 so the value
  /// at 1/2 is exactly 1.
  static OrliczFunction1 neglog(bool normalized = true) {
    OrliczFunction1 f;
    f.kind_ = Kind::kNegLog;
    f.normalized_ = normalized;
    f.bound_ = 1.0;
    f.in_class_ = false;  // not defined on all of [0, inf)
    return f;
  }

  static OrliczFunction1 custom(CustomSpec spec) {
    if (!spec.eval) throw ConfigError("custom gauge requires an eval callable");
    if (!(spec.domain_bound > 0.0)) {
      throw ConfigError("custom gauge domain bound must be positive");
    }
    OrliczFunction1 f;
    f.kind_ = Kind::kCustom;
    f.custom_ = std::move(spec);
    f.bound_ = f.custom_.domain_bound;
    // Class membership additionally requires the whole half-line as domain.
    f.in_class_ = f.custom_.convex_increasing && !std::isfinite(f.bound_);
    f.validate_custom();
    return f;
  }

  Kind kind() const { return kind_; }
  double power_exponent() const { return q_; }
  bool neglog_normalized() const { return normalized_; }
  const std::string& label() const {
    static const std::string kPowerLabel = "power";
    static const std::string kNegLogLabel = "neglog";
    switch (kind_) {
      case Kind::kPower: return kPowerLabel;
      case Kind::kNegLog: return kNegLogLabel;
      default: return custom_.label;
    }
  }

  /// Supremum of the domain; evaluation at or above it throws DomainError.
  double domain_bound() const { return bound_; }

  /// True when the gauge is convex, strictly increasing on [0, inf) with
  /// value 0 at 0 and 1 at 1.
  bool in_phi_class() const { return in_class_; }

  double operator()(double t) const {
    if (std::isnan(t) || t < 0.0) {
      throw DomainError("gauge argument must be non-negative");
    }
    if (t >= bound_) {
      throw DomainError("gauge argument " + std::to_string(t) +
                        " is at or above the domain bound " + std::to_string(bound_));
    }
    switch (kind_) {
      case Kind::kPower:
        return std::pow(t, q_);
      case Kind::kNegLog: {
        const double raw = -std::log1p(-t);
        return normalized_ ? raw / kLog2 : raw;
      }
      default:
        return custom_.eval(t);
    }
  }

  /// Left derivative at t (equals the two-sided derivative where smooth).
  double left_derivative(double t) const {
    if (std::isnan(t) || t <= 0.0) {
      throw DomainError("left derivative needs a strictly positive argument");
    }
    if (t > bound_) {
      throw DomainError("left derivative argument exceeds the domain bound");
    }
    switch (kind_) {
      case Kind::kPower:
        return q_ * std::pow(t, q_ - 1.0);
      case Kind::kNegLog: {
        const double raw = 1.0 / (1.0 - t);
        return normalized_ ? raw / kLog2 : raw;
      }
      default: {
        if (custom_.derivative) return custom_.derivative(t);
        const double h = 1e-6 * std::max(1.0, t);
        if (t + h < bound_ && t - h > 0.0) {
          return (custom_.eval(t + h) - custom_.eval(t - h)) / (2.0 * h);
        }
        // Next to the domain bound (or 0): backward difference only.
        return (custom_.eval(t) - custom_.eval(std::max(0.0, t - h))) / h;
      }
    }
  }

  /// Inverse on the range; throws RangeError for y below 0 or above the sup.
  double inverse(double y) const {
    if (std::isnan(y) || y < 0.0) {
      throw RangeError("gauge inverse argument must be non-negative");
    }
    switch (kind_) {
      case Kind::kPower:
        return std::pow(y, 1.0 / q_);
      case Kind::kNegLog:
        // y = -log(1 - t) / c  =>  t = 1 - exp(-c y) = -expm1(-c y).
        return -std::expm1(-(normalized_ ? kLog2 : 1.0) * y);
      default:
        return invert_by_bisection(y);
    }
  }

 private:
  static constexpr double kLog2 = 0.6931471805599453094;

  OrliczFunction1() = default;

  void validate_custom() {
    const double probe_top = std::isfinite(bound_) ? bound_ * (1.0 - 1e-9) : 8.0;
    double prev = custom_.eval(0.0);
    if (!(std::fabs(prev) <= 1e-12)) {
      throw ConfigError("custom gauge must evaluate to 0 at 0");
    }
    constexpr int kProbes = 64;
    for (int i = 1; i <= kProbes; ++i) {
      const double t = probe_top * static_cast<double>(i) / kProbes;
      const double v = custom_.eval(t);
      if (std::isnan(v)) {
        throw ConfigError("custom gauge evaluated to NaN inside its domain");
      }
      if (!(v > prev)) {
        throw ConfigError("custom gauge must be strictly increasing");
      }
      prev = v;
    }
  }

  double invert_by_bisection(double y) const {
    if (y == 0.0) return 0.0;
    double lo = 0.0;
    double hi;
    if (std::isfinite(bound_)) {
      // Approach the bound by shrinking the gap until the value exceeds y.
      double gap = bound_ * 0.5;
      hi = bound_ - gap;
      int guard = 0;
      while (custom_.eval(hi) < y) {
        lo = hi;
        gap *= 0.5;
        hi = bound_ - gap;
        if (++guard > 200 || hi <= lo) {
          throw RangeError("gauge inverse argument exceeds the attainable supremum");
        }
      }
    } else {
      hi = 1.0;
      int guard = 0;
      while (custom_.eval(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 1024) {
          throw RangeError("gauge inverse argument exceeds the attainable supremum");
        }
      }
    }
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) return mid;
      if (custom_.eval(mid) < y) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }

  Kind kind_ = Kind::kPower;
  double q_ = 1.0;
  bool normalized_ = true;
  double bound_ = kInfiniteBound;
  bool in_class_ = true;
  CustomSpec custom_;
};

/// Multi-variable Orlicz gauge.  The workhorse is the weighted-sum form
/// phi(x) = sum_j w_j * phi_j(x_j); zero-weight terms are inert (their
/// coordinate is unconstrained and ignored).
class OrliczFunctionM {
 public:
  struct Term {
    OrliczFunction1 phi;
    double weight = 1.0;
  };

  static OrliczFunctionM sum(std::vector<Term> terms) {
    if (terms.empty()) throw ConfigError("sum gauge needs at least one term");
    bool any_active = false;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const double w = terms[j].weight;
      if (std::isnan(w) || w < 0.0) {
        throw ConfigError("sum gauge weights must be non-negative (term " +
                          std::to_string(j) + ")");
      }
      if (w > 0.0) any_active = true;
    }
    if (!any_active) throw ConfigError("sum gauge needs at least one positive weight");
    OrliczFunctionM f;
    f.arity_ = terms.size();
    f.terms_ = std::move(terms);
    f.is_sum_ = true;
    return f;
  }

  /// Fully general m-variable gauge.  `bounds` holds per-coordinate domain
  /// bounds (sup of the open interval for that coordinate).
  static OrliczFunctionM custom(std::size_t arity,
                                std::function<double(std::span<const double>)> eval,
                                std::vector<double> bounds) {
    if (arity == 0) throw ConfigError("multi-variable gauge needs arity >= 1");
    if (!eval) throw ConfigError("multi-variable gauge requires an eval callable");
    if (bounds.size() != arity) {
      throw ConfigError("multi-variable gauge needs one domain bound per coordinate");
    }
    OrliczFunctionM f;
    f.arity_ = arity;
    f.custom_eval_ = std::move(eval);
    f.custom_bounds_ = std::move(bounds);
    f.is_sum_ = false;
    return f;
  }

  std::size_t arity() const { return arity_; }
  bool is_sum() const { return is_sum_; }
  const std::vector<Term>& terms() const {
    if (!is_sum_) throw ConfigError("terms() is only available for sum-form gauges");
    return terms_;
  }

  /// Domain bound of coordinate j; +inf when the coordinate is inert.
  double domain_bound(std::size_t j) const {
    if (j >= arity_) throw ConfigError("gauge coordinate index out of range");
    if (is_sum_) {
      return terms_[j].weight > 0.0 ? terms_[j].phi.domain_bound() : kInfiniteBound;
    }
    return custom_bounds_[j];
  }

  /// True when coordinate j actually contributes to the value.
  bool coordinate_active(std::size_t j) const {
    if (j >= arity_) throw ConfigError("gauge coordinate index out of range");
    return is_sum_ ? terms_[j].weight > 0.0 : true;
  }

  double operator()(std::span<const double> x) const {
    if (x.size() != arity_) {
      throw ConfigError("gauge expected " + std::to_string(arity_) + " coordinates, got " +
                        std::to_string(x.size()));
    }
    for (std::size_t j = 0; j < arity_; ++j) {
      if (!coordinate_active(j)) continue;
      if (std::isnan(x[j]) || x[j] < 0.0) {
        throw DomainError("gauge coordinate " + std::to_string(j) + " must be non-negative");
      }
      if (x[j] >= domain_bound(j)) {
        throw DomainError("gauge coordinate " + std::to_string(j) +
                          " is at or above its domain bound");
      }
    }
    if (is_sum_) {
      double total = 0.0;
      for (std::size_t j = 0; j < arity_; ++j) {
        const Term& term = terms_[j];
        if (term.weight == 0.0) continue;
        total += term.weight * term.phi(x[j]);
      }
      return total;
    }
    return custom_eval_(x);
  }

 private:
  OrliczFunctionM() = default;

  std::size_t arity_ = 0;
  bool is_sum_ = true;
  std::vector<Term> terms_;
  std::function<double(std::span<const double>)> custom_eval_;
  std::vector<double> custom_bounds_;
};

}  // namespace starcalc
