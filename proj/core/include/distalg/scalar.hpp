#pragma once

#include <cmath>
#include <complex>

namespace distalg {

/// Scalars are complex double precision throughout; most inputs of interest
/// are real-valued but the algebra is defined over C.
using Scalar = std::complex<double>;

/// Magnitudes below this are treated as exact zero.
inline constexpr double kEpsZero = 1e-9;

inline bool scalar_finite(Scalar z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Normalizes tiny values to exact zero, componentwise and in magnitude.
inline Scalar chop(Scalar z, double eps = kEpsZero) {
  if (std::abs(z) < eps) return Scalar{0.0, 0.0};
  double re = std::abs(z.real()) < eps ? 0.0 : z.real();
  double im = std::abs(z.imag()) < eps ? 0.0 : z.imag();
  return Scalar{re, im};
}

inline bool scalar_near(Scalar a, Scalar b, double tol = kEpsZero) {
  return std::abs(a - b) <= tol;
}

}  // namespace distalg
