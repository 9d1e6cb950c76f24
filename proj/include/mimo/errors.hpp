#pragma once

#include <stdexcept>
#include <string>

namespace mimo {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (non-square input to an eigensolver, etc.).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar or index argument is outside its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Coincident points or other ill-posed geometry.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A matrix factorization failed (e.g. covariance not positive semidefinite).
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Configuration document is malformed or violates an invariant.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Array geometry cannot support the requested precoder.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A precoder input collapsed to (numerically) zero: zero channel, or the
/// intended channel lies inside the interference span.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace mimo
