#pragma once

#include "distalg/distribution.hpp"
#include "distalg/test_function.hpp"

namespace distalg {

/// Default absolute tolerance for the adaptive quadrature behind pair().
inline constexpr double kTolQuad = 1e-10;

/// The functional action <F, t>: quadrature of the smooth part against t
/// over the support of t, plus sum_j c_j (-1)^j t^(j)(w) for every comb.
Scalar pair(const Distribution& f, const TestFunction& t,
            double tol = kTolQuad);

struct OracleResult {
  Scalar value;
  double error_estimate = 0.0;
};

/// Independent evaluation of <F star G, t> straight from the limit
/// definition: <F . G^eps, t> for a geometric eps-sequence, Richardson
/// extrapolated to eps -> 0+. Throws NonConvergence when the extrapolants do
/// not settle within tol.
OracleResult star_limit_oracle(const Distribution& f, const Distribution& g,
                               const TestFunction& t, double tol = 1e-6,
                               int levels = 12);

}  // namespace distalg
