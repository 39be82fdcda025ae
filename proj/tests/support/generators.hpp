#pragma once

#include <random>
#include <vector>

#include "distalg/distribution.hpp"
#include "distalg/schrodinger.hpp"
#include "distalg/test_function.hpp"

// Randomized families used by the property and acceptance suites: pieces
// drawn from {polynomials, sin, cos, exp}, 0-2 breakpoints in [-1.5, 1.5]
// with a minimum gap, combs up to order 3.
namespace distalg::testing {

using Rng = std::mt19937;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int pick(Rng& rng, int n) {
  return std::uniform_int_distribution<int>(0, n - 1)(rng);
}

inline SmoothExpr random_piece(Rng& rng, bool allow_complex = false) {
  const SmoothExpr x = SmoothExpr::variable();
  double a = uniform(rng, -2.0, 2.0);
  double b = uniform(rng, -2.0, 2.0);
  Scalar ca = allow_complex && pick(rng, 3) == 0
                  ? Scalar{a, uniform(rng, -1.0, 1.0)}
                  : Scalar{a, 0.0};
  switch (pick(rng, 6)) {
    case 0:
      return SmoothExpr::constant(ca);
    case 1:
      return SmoothExpr::add(SmoothExpr::constant(ca),
                             SmoothExpr::mul(SmoothExpr::constant(b), x));
    case 2:  // a + b x^2
      return SmoothExpr::add(
          SmoothExpr::constant(ca),
          SmoothExpr::mul(SmoothExpr::constant(b), SmoothExpr::pow(x, 2)));
    case 3:
      return SmoothExpr::mul(
          SmoothExpr::constant(ca),
          SmoothExpr::sin(SmoothExpr::mul(
              SmoothExpr::constant(uniform(rng, 0.5, 2.5)), x)));
    case 4:
      return SmoothExpr::mul(
          SmoothExpr::constant(ca),
          SmoothExpr::cos(SmoothExpr::mul(
              SmoothExpr::constant(uniform(rng, 0.5, 2.5)), x)));
    default:
      return SmoothExpr::mul(
          SmoothExpr::constant(ca),
          SmoothExpr::exp(SmoothExpr::mul(
              SmoothExpr::constant(uniform(rng, -1.0, 1.0)), x)));
  }
}

inline std::vector<double> random_breakpoints(Rng& rng, int max_count) {
  int n = pick(rng, max_count + 1);
  std::vector<double> bps;
  double next_lo = -1.5;
  for (int i = 0; i < n; ++i) {
    double hi = 1.5 - 0.4 * (n - 1 - i);
    if (next_lo >= hi) break;
    double w = uniform(rng, next_lo, hi);
    bps.push_back(w);
    next_lo = w + 0.4;  // keep a gap so the oracle's eps-sequence resolves
  }
  return bps;
}

inline Distribution random_distribution(Rng& rng, int max_breakpoints = 2,
                                        int max_comb_order = 3,
                                        bool allow_complex = false) {
  PiecewiseSmooth ps;
  ps.breakpoints = random_breakpoints(rng, max_breakpoints);
  ps.pieces.clear();
  for (std::size_t k = 0; k <= ps.breakpoints.size(); ++k) {
    ps.pieces.push_back(random_piece(rng, allow_complex));
  }
  std::vector<DeltaComb> combs;
  for (double w : ps.breakpoints) {
    if (pick(rng, 2) == 0) continue;
    DeltaComb comb;
    comb.point = w;
    int order = pick(rng, max_comb_order + 1);
    for (int j = 0; j <= order; ++j) {
      double re = uniform(rng, -2.0, 2.0);
      comb.coeffs.push_back(
          allow_complex && pick(rng, 3) == 0
              ? Scalar{re, uniform(rng, -1.0, 1.0)}
              : Scalar{re, 0.0});
    }
    combs.push_back(std::move(comb));
  }
  // Sometimes a comb at a point with no piece break.
  if (pick(rng, 3) == 0) {
    DeltaComb comb;
    comb.point = uniform(rng, -2.0, 2.0);
    comb.coeffs.push_back(Scalar{uniform(rng, -2.0, 2.0), 0.0});
    combs.push_back(std::move(comb));
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

/// Jump-free at its (single) breakpoint: right piece = left + (x - w) * q.
inline Distribution random_continuous(Rng& rng) {
  const SmoothExpr x = SmoothExpr::variable();
  SmoothExpr base = random_piece(rng);
  if (pick(rng, 4) == 0) return Distribution::from_smooth(base);
  double w = uniform(rng, -1.5, 1.5);
  SmoothExpr kink = SmoothExpr::mul(
      SmoothExpr::add(x, SmoothExpr::constant(-w)), random_piece(rng));
  PiecewiseSmooth ps;
  ps.breakpoints = {w};
  ps.pieces = {base, SmoothExpr::add(base, kink)};
  return Distribution::make(std::move(ps), {});
}

inline SmoothExpr decaying_poly_piece(Rng& rng, int vanish_order) {
  // x^vanish_order * (a + b x + c x^2) * exp(-x^2)
  const SmoothExpr x = SmoothExpr::variable();
  SmoothExpr poly = SmoothExpr::add(
      {SmoothExpr::constant(uniform(rng, -2.0, 2.0)),
       SmoothExpr::mul(SmoothExpr::constant(uniform(rng, -2.0, 2.0)), x),
       SmoothExpr::mul(SmoothExpr::constant(uniform(rng, -2.0, 2.0)),
                       SmoothExpr::pow(x, 2))});
  SmoothExpr gauss = SmoothExpr::exp(SmoothExpr::neg(SmoothExpr::pow(x, 2)));
  if (vanish_order == 0) return SmoothExpr::mul(poly, gauss);
  return SmoothExpr::mul(
      {SmoothExpr::pow(x, vanish_order), poly, gauss});
}

/// psi = theta(-x) psi_- + theta(x) psi_+ with psi_+-(0) = 0 (Dirichlet).
inline WaveFunction random_dirichlet_wave(Rng& rng) {
  PiecewiseSmooth ps;
  ps.breakpoints = {0.0};
  ps.pieces = {decaying_poly_piece(rng, 1), decaying_poly_piece(rng, 1)};
  return WaveFunction(Distribution::make(std::move(ps), {}));
}

/// psi in D(H_S): both one-sided data vanish to first order.
inline WaveFunction random_hs_wave(Rng& rng) {
  PiecewiseSmooth ps;
  ps.breakpoints = {0.0};
  ps.pieces = {decaying_poly_piece(rng, 2), decaying_poly_piece(rng, 2)};
  return WaveFunction(Distribution::make(std::move(ps), {}));
}

inline std::vector<TestFunction> bump_panel() {
  return {TestFunction::bump(0.0, 2.0), TestFunction::bump(-1.0, 1.5),
          TestFunction::bump(1.0, 1.5), TestFunction::bump(0.5, 2.5),
          TestFunction::bump(-0.5, 1.0)};
}

}  // namespace distalg::testing
