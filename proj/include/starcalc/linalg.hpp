// Small dense matrix support for linear images of star bodies.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "starcalc/errors.hpp"

namespace starcalc {

/// Row-major square matrix of doubles.  Only the handful of operations the
/// library needs: multiply, apply-to-vector, inversion, identity.
class Matrix {
 public:
  Matrix() : n_(0) {}

  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Builds from rows; every row must have the same length as the row count.
  explicit Matrix(const std::vector<std::vector<double>>& rows)
      : n_(rows.size()), data_(rows.size() * rows.size(), 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (rows[i].size() != n_) {
        throw MatrixError("matrix rows must all have length equal to the row count");
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (!std::isfinite(rows[i][j])) {
          throw MatrixError("matrix entries must be finite");
        }
        (*this)(i, j) = rows[i][j];
      }
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::vector<double> apply(const std::vector<double>& v) const {
    std::vector<double> out(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  Matrix multiply(const Matrix& rhs) const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) out(i, j) += a * rhs(k, j);
      }
    }
    return out;
  }

  /// Gauss-Jordan inverse with partial pivoting.  Throws MatrixError if the
  /// matrix is singular to working precision.
  Matrix inverse() const {
    const std::size_t n = n_;
    Matrix a(*this);
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      double best = std::fabs(a(col, col));
      for (std::size_t r = col + 1; r < n; ++r) {
        const double mag = std::fabs(a(r, col));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
      if (best < 1e-300) {
        throw MatrixError("matrix is singular; cannot invert");
      }
      if (pivot != col) {
        swap_rows(a, pivot, col);
        swap_rows(inv, pivot, col);
      }
      const double d = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= d;
        inv(col, j) /= d;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col) continue;
        const double f = a(r, col);
        if (f == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_, std::vector<double>(n_, 0.0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

 private:
  static void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m.n_; ++j) std::swap(m(a, j), m(b, j));
  }

  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace starcalc
