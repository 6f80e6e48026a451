#pragma once

#include <stdexcept>
#include <string>

namespace iplab {

/// Base class for all iplab errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bump interval with alpha >= beta.
class InvalidIntervalError : public Error {
 public:
  using Error::Error;
};

/// Derivative order above the configured cap.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Adjoint power beyond the configured maximum order.
class OrderCapError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
/// Carries the residual error estimate that was achieved.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Invalid grid or scenario configuration.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Bump support touches or crosses the grid boundary.
class SupportOutOfDomainError : public Error {
 public:
  using Error::Error;
};

/// Two fields on different grids where the same grid is required.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Moment of a field with vanishing norm.
class UndefinedMomentError : public Error {
 public:
  using Error::Error;
};

}  // namespace iplab
