#pragma once

#include <stdexcept>
#include <string>

namespace distalg {

/// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text; carries a 0-based position into the source string.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// The Hormander product requires disjoint singular supports.
class OverlappingSingularSupports : public Error {
 public:
  using Error::Error;
};

/// Evaluation produced a non-finite value.
class EvalOverflow : public Error {
 public:
  using Error::Error;
};

/// A wave function was handed to an operator outside its domain.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

/// A wave function has breakpoints other than the origin.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// The epsilon-limit extrapolation did not settle within tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// An integrand is still non-negligible at the truncation boundary.
class DecayCheckFailed : public Error {
 public:
  using Error::Error;
};

/// An operator image carries delta combs, so the L2 pairing is undefined.
class NotInL2 : public Error {
 public:
  using Error::Error;
};

/// Numerical quadrature failed to reach the requested tolerance.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace distalg
