#pragma once

#include <stdexcept>
#include <string>

namespace logdamp {

/// Argument outside the domain of an operation (negative radius, t too small, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An integrand returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double abscissa)
      : std::runtime_error(what), abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

/// Adaptive quadrature ran out of panels where a converged value is required.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial data family without a closed-form transform.
class UnsupportedFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace logdamp
