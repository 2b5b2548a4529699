#pragma once

#include <stdexcept>
#include <string>

namespace cavityvdw {

/// Input outside the domain of a formula (zero separation, degenerate angle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double target)
      : std::runtime_error(what + " (error estimate " + std::to_string(estimate) +
                           ", target " + std::to_string(target) + ")"),
        error_estimate_(estimate),
        target_(target) {}

  double error_estimate() const noexcept { return error_estimate_; }
  double target() const noexcept { return target_; }

 private:
  double error_estimate_;
  double target_;
};

/// Least-squares fit failed (degenerate samples, divergence, unphysical width).
class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-difference gradient whose Richardson error estimate exceeds tolerance.
class GradientError : public std::runtime_error {
 public:
  GradientError(const std::string& what, double estimate)
      : std::runtime_error(what), error_estimate_(estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

}  // namespace cavityvdw
