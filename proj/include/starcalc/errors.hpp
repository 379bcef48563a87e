// Error types shared across the starcalc library.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace starcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument fell outside a function's domain (e.g. t >= domain bound of phi).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A requested value lies outside the attainable range (e.g. inverting above sup phi).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration: bad resolution, mismatched dimensions, non-positive
/// constants, malformed coefficient sets.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// JSON document violates the input schema; carries the JSON path of the offender.
class SchemaError : public ConfigError {
 public:
  SchemaError(std::string path, const std::string& message)
      : ConfigError("at " + path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A theorem hypothesis required by a verification case does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver failed to converge or to bracket its root.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration failure; keeps the volume trace for diagnosis.
class FixedPointError : public SolverError {
 public:
  FixedPointError(const std::string& message, std::vector<double> volume_trace)
      : SolverError(message), volume_trace_(std::move(volume_trace)) {}
  const std::vector<double>& volume_trace() const { return volume_trace_; }

 private:
  std::vector<double> volume_trace_;
};

/// Radial function evaluated to a non-positive or non-finite value.
class DegenerateBodyError : public Error {
 public:
  using Error::Error;
};

/// Singular or otherwise unusable matrix.
class MatrixError : public Error {
 public:
  using Error::Error;
};

/// Non-finite integrand value at a quadrature node.
class IntegrandError : public Error {
 public:
  using Error::Error;
};

/// Filesystem / stream failure, annotated with the path involved.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace starcalc
