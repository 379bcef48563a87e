// Seeded random generators for property-style tests and verification suites.
//
// Generators are deterministic for a fixed (dimension, seed) pair.  "Mild"
// bodies keep their radial functions inside [0.7, 1.6], which bounds radial
// ratios between any two of them and keeps gauge arguments comfortably inside
// typical domains.
#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "starcalc/errors.hpp"
#include "starcalc/linalg.hpp"
#include "starcalc/phi.hpp"
#include "starcalc/starbody.hpp"

namespace starcalc {

/// splitmix64 step; used to derive independent substreams from a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class BodyGenerator {
 public:
  BodyGenerator(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {
    if (dim < 2) throw ConfigError("body generator needs dimension >= 2");
  }

  int dim() const { return dim_; }

  double uniform(double a, double b) {
    std::uniform_real_distribution<double> d(a, b);
    return d(rng_);
  }

  int pick(int count) {
    std::uniform_int_distribution<int> d(0, count - 1);
    return d(rng_);
  }

  /// Any valid body, including dilates and linear images.
  StarBody body() {
    switch (pick(dim_ == 2 ? 5 : (dim_ == 3 ? 4 : 3))) {
      case 0:
        return StarBody::ball(dim_, uniform(0.5, 2.0));
      case 1:
        return StarBody::lp_ball(dim_, uniform(0.8, 4.0), uniform(0.5, 2.0));
      case 2:
        return StarBody::dilate(uniform(0.5, 2.0), mild_body());
      case 3:
        return StarBody::linear_image(well_conditioned_matrix(3.0), mild_body());
      default:
        return trig_poly_body(0.45);
    }
  }

  /// Body whose radial function stays inside [0.7, 1.6].
  StarBody mild_body() {
    switch (pick(dim_ == 2 ? 3 : 2)) {
      case 0:
        return StarBody::ball(dim_, uniform(0.9, 1.1));
      case 1:
        return StarBody::lp_ball(dim_, uniform(1.5, 3.0), uniform(0.9, 1.1));
      default:
        return trig_poly_body(0.2);
    }
  }

  /// Smooth body with nontrivial curvature (trig polynomial in the plane,
  /// ellipsoid otherwise).
  StarBody smooth_body() {
    if (dim_ == 2) return trig_poly_body(0.25);
    return StarBody::linear_image(well_conditioned_matrix(2.0), StarBody::ball(dim_, 1.0));
  }

  std::pair<StarBody, StarBody> pair() { return {body(), body()}; }

  std::pair<StarBody, StarBody> mild_pair() { return {mild_body(), mild_body()}; }

  /// (K, L) with L strictly inside K: mild bodies have radial >= 0.7, so a
  /// dilate by < 0.7 / 1.6 of another mild body is strictly contained.
  std::pair<StarBody, StarBody> nested_pair() {
    StarBody outer = mild_body();
    StarBody inner = StarBody::dilate(uniform(0.25, 0.4), mild_body());
    return {outer, inner};
  }

  /// (K, c K): the proportional pair realizing equality cases.
  std::pair<StarBody, StarBody> dilate_pair() {
    StarBody base = mild_body();
    return {base, StarBody::dilate(uniform(0.5, 2.0), base)};
  }

  OrliczFunction1 power_phi(double q_min = 1.1, double q_max = 3.5) {
    return OrliczFunction1::power(uniform(q_min, q_max));
  }

  /// Random invertible matrix with singular values in [1/sqrt(c), sqrt(c)].
  Matrix well_conditioned_matrix(double max_cond = 4.0) {
    const double s = std::sqrt(max_cond);
    Matrix d(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      d(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = uniform(1.0 / s, s);
    }
    return random_rotation().multiply(d).multiply(random_rotation());
  }

  /// Random special orthogonal matrix via Gram-Schmidt on Gaussian columns.
  Matrix random_rotation() {
    const std::size_t n = static_cast<std::size_t>(dim_);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> cols(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      double norm_sq = 0.0;
      for (int attempt = 0; attempt < 64; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) cols[j][i] = gauss(rng_);
        for (std::size_t prev = 0; prev < j; ++prev) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += cols[j][i] * cols[prev][i];
          for (std::size_t i = 0; i < n; ++i) cols[j][i] -= dot * cols[prev][i];
        }
        norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm_sq += cols[j][i] * cols[j][i];
        if (norm_sq > 1e-8) break;
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (std::size_t i = 0; i < n; ++i) cols[j][i] *= inv;
    }
    Matrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r(i, j) = cols[j][i];
    }
    return r;
  }

 private:
  /// Trig polynomial with |harmonic coefficients| summing below `budget`
  /// times the constant term, guaranteeing strict positivity.
  StarBody trig_poly_body(double budget) {
    if (dim_ != 2) throw ConfigError("trig polynomial bodies exist only in dimension 2");
    const double a0 = uniform(0.9, 1.3);
    const int harmonics = 2 + pick(3);
    std::vector<double> cos_coeffs(static_cast<std::size_t>(harmonics), 0.0);
    std::vector<double> sin_coeffs(static_cast<std::size_t>(harmonics), 0.0);
    double remaining = budget * a0;
    for (int h = 0; h < harmonics; ++h) {
      const double c = uniform(-remaining * 0.5, remaining * 0.5);
      remaining -= std::fabs(c);
      cos_coeffs[static_cast<std::size_t>(h)] = c;
      const double sgn = uniform(-remaining * 0.5, remaining * 0.5);
      remaining -= std::fabs(sgn);
      sin_coeffs[static_cast<std::size_t>(h)] = sgn;
    }
    return StarBody::radial_trig_poly(a0, std::move(cos_coeffs), std::move(sin_coeffs));
  }

  int dim_;
  std::mt19937_64 rng_;
};

}  // namespace starcalc
