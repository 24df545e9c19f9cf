#pragma once

#include <stdexcept>
#include <string>

namespace twist {

/// Argument outside the mathematical domain of an operation (negative energy, p <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Degenerate or inconsistent geometry (zero-area triangle, window off the grid, ...).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physics or numerics precondition does not hold (not far field, aliasing, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested quadrature is too coarse for the oscillation of the integrand.
class QuadratureError : public PreconditionError {
 public:
  QuadratureError(const std::string& what, int required_order)
      : PreconditionError(what), required_order_(required_order) {}
  int required_order() const { return required_order_; }

 private:
  int required_order_;
};

}  // namespace twist
