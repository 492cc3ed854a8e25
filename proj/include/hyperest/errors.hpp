#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace hyperest {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidMeshError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A state left the admissible set (e.g. negative density).
/// `x` and `t` locate the offending evaluation when known (NaN otherwise).
class StateSpaceError : public Error {
 public:
  StateSpaceError(const std::string& what, double x, double t = std::numeric_limits<double>::quiet_NaN())
      : Error(what), x_(x), t_(t) {}
  double x() const { return x_; }
  double t() const { return t_; }

 private:
  double x_;
  double t_;
};

/// Not enough trajectory history for a reconstruction or FD stencil.
class StartupError : public Error {
 public:
  using Error::Error;
};

class ConditioningError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvexityError : public Error {
 public:
  using Error::Error;
};

/// Reconstruction left the compact box the estimator constants were built on.
class AssumptionViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperest
