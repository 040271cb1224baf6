#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace iuclab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A result exceeds the representable floating-point range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to meet its tolerance within the budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// A requested object exceeds the configured memory budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Vector/matrix dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The ground state failed the strict-positivity check (solver failure).
class PositivityError : public Error {
 public:
  using Error::Error;
};

/// A run configuration failed to parse or validate.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver ran out of its iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> best)
      : Error(what), best_residuals(std::move(best)) {}
  std::vector<double> best_residuals;
};

}  // namespace iuclab
