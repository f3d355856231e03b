#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Raised when an argument lies outside the domain of a formula
/// (coincident points, touching bodies, regulator poles, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two integration bodies overlap, touch, or cannot be paired.
class GeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quadrature stopped before reaching its tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double best_value, double residual)
      : std::runtime_error(what), best_value_(best_value), residual_(residual) {}

  double best_value() const noexcept { return best_value_; }
  double residual() const noexcept { return residual_; }

 private:
  double best_value_;
  double residual_;
};

}  // namespace casimir
