#pragma once

#include <stdexcept>
#include <string>

namespace tunnel {

/// Input outside the domain an operation is defined on.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed: quadrature did not converge, a ratio has a
/// vanishing denominator, or a formula diverges at the requested point.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Adaptive quadrature ran out of panels before reaching its tolerance.
class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

/// The standard phase-time formula is singular (q_M = 0).
class DivergenceError : public NumericalError {
 public:
  explicit DivergenceError(const std::string& what) : NumericalError(what) {}
};

/// Density maximum sits on the edge of the peak-search window.
class PeakWindowError : public NumericalError {
 public:
  explicit PeakWindowError(const std::string& what) : NumericalError(what) {}
};

}  // namespace tunnel
