// Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration on Legendre
// polynomials; used for the polar-angle factor of the sphere product rule.
#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "starcalc/errors.hpp"

namespace starcalc::detail {

/// Computes the n-point Gauss-Legendre rule.  Returns {nodes, weights} with
/// nodes ascending in (-1, 1); weights sum to 2.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
  if (n == 0) throw ConfigError("Gauss-Legendre rule needs at least one node");
  std::vector<double> x(n), w(n);
  const std::size_t m = (n + 1) / 2;
  const double pi = 3.14159265358979323846;
  for (std::size_t i = 0; i < m; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending order).
    double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(z) and P_{n-1}(z) by the three-term recurrence.
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * static_cast<double>(j) + 1.0) * z * p1 - static_cast<double>(j) * p2) /
             (static_cast<double>(j) + 1.0);
      }
      pp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    const double weight = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  return {std::move(x), std::move(w)};
}

}  // namespace starcalc::detail
