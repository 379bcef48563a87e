// Bracketing + bisection for strictly decreasing scalar equations f(x) = 1.
#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "starcalc/errors.hpp"

namespace starcalc::detail {

struct RootOptions {
  /// Relative width of the final bracket.  Zero means bisect until the
  /// midpoint equals one of the endpoints (machine precision).
  double rel_tol = 1e-12;
  /// Maximum number of doubling (or halving) steps while hunting a bracket.
  int max_growth = 128;
  /// Cap on bisection iterations; generous since each halves the bracket.
  int max_iter = 200;
};

/// Solves f(x) = 1 for a strictly decreasing f on (x_min, inf).
///
/// The caller guarantees f is strictly decreasing where finite, tends to 0 as
/// x -> inf, and may treat x <= x_min as "+infinity" (values above any level).
/// x0 > x_min is a starting guess.  Returns the bisection midpoint once the
/// bracket is narrower than rel_tol * |bracket|.
template <class F>
double solve_decreasing_equals_one(F&& f, double x0, double x_min, const RootOptions& opt = {}) {
  if (!(x0 > x_min) || !std::isfinite(x0)) {
    throw SolverError("root solve: initial guess must exceed the lower domain bound");
  }
  auto value = [&](double x) -> double {
    if (x <= x_min) return std::numeric_limits<double>::infinity();
    return f(x);
  };

  double lo = x_min;   // f(lo) >= 1 conceptually (possibly +inf)
  double hi = x0;
  double f_hi = value(hi);
  if (!std::isfinite(f_hi) && !(f_hi > 0)) {
    throw SolverError("root solve: function evaluated to NaN at the initial guess");
  }

  if (f_hi > 1.0) {
    // Guess still above the level: grow upward until f drops below 1.
    lo = hi;
    for (int step = 0; f_hi > 1.0; ++step) {
      if (step >= opt.max_growth) {
        throw SolverError("root solve: failed to bracket the root while expanding upward");
      }
      lo = hi;
      const double width = hi - x_min;
      hi = x_min + 2.0 * width;
      f_hi = value(hi);
      if (std::isnan(f_hi)) {
        throw SolverError("root solve: function evaluated to NaN while expanding upward");
      }
    }
  } else if (f_hi < 1.0) {
    // Guess below the level: shrink toward x_min until f rises above 1.
    double probe = hi;
    for (int step = 0;; ++step) {
      if (step >= opt.max_growth) {
        throw SolverError("root solve: failed to bracket the root while contracting downward");
      }
      const double width = probe - x_min;
      const double next = x_min + 0.5 * width;
      const double f_next = value(next);
      if (std::isnan(f_next)) {
        throw SolverError("root solve: function evaluated to NaN while contracting downward");
      }
      if (f_next >= 1.0) {
        lo = next;
        hi = probe;
        break;
      }
      probe = next;
      if (!(probe > x_min)) {
        throw SolverError("root solve: bracket collapsed onto the lower domain bound");
      }
    }
  } else {
    return hi;  // exact hit
  }

  // Bisection on [lo, hi] with f(lo) >= 1 >= f(hi).
  for (int it = 0; it < opt.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;  // machine-precision bracket
    const double fm = value(mid);
    if (std::isnan(fm)) {
      throw SolverError("root solve: function evaluated to NaN during bisection");
    }
    if (fm >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (opt.rel_tol > 0.0 && (hi - lo) <= opt.rel_tol * std::fabs(hi)) {
      return 0.5 * (lo + hi);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace starcalc::detail
