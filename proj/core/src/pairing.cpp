#include "distalg/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "distalg/errors.hpp"

namespace distalg {

namespace {

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;

/// Integrates a complex-valued integrand over [a, b] to absolute tolerance.
Scalar integrate(const std::function<Scalar(double)>& f, double a, double b,
                 double tol) {
  double err_re = 0.0;
  double err_im = 0.0;
  double re = Quadrature::integrate(
      [&](double x) { return f(x).real(); }, a, b, 12, tol, &err_re);
  double im = Quadrature::integrate(
      [&](double x) { return f(x).imag(); }, a, b, 12, tol, &err_im);
  double err = err_re + err_im;
  if (!(err <= std::max(tol, 1e-8 * (std::abs(re) + std::abs(im))))) {
    throw QuadratureFailure("quadrature reached only " + std::to_string(err) +
                            " (requested " + std::to_string(tol) + ")");
  }
  return Scalar{re, im};
}

}  // namespace

Scalar pair(const Distribution& f, const TestFunction& t, double tol) {
  // Split [t.lo, t.hi] at the breakpoints of F and integrate piecewise.
  std::vector<double> cuts{t.lo()};
  for (double w : f.breakpoints()) {
    if (w > t.lo() && w < t.hi()) cuts.push_back(w);
  }
  cuts.push_back(t.hi());

  Scalar total{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i];
    double b = cuts[i + 1];
    const SmoothExpr piece = f.piece_at(0.5 * (a + b));
    if (piece.is_zero()) continue;
    total += integrate(
        [&](double x) { return piece.eval(x) * t.value(x); }, a, b, tol);
  }
  // <delta^(j)_w, t> = (-1)^j t^(j)(w).
  for (const auto& comb : f.combs()) {
    for (int j = 0; j <= comb.order(); ++j) {
      Scalar c = comb.coeffs[static_cast<std::size_t>(j)];
      if (c == Scalar{0.0, 0.0}) continue;
      double sign = (j % 2 == 0) ? 1.0 : -1.0;
      total += c * sign * t.derivative(comb.point, j);
    }
  }
  return total;
}

OracleResult star_limit_oracle(const Distribution& f, const Distribution& g,
                               const TestFunction& t, double tol, int levels) {
  // Largest eps0 with V_F and V_{G^eps} disjoint for all 0 < eps < eps0:
  // collisions happen only at eps = w_G - w_F > 0. The cap keeps the
  // sequence inside the asymptotic regime; bump test functions are smooth
  // but not analytic, so large eps0 defeats the extrapolation.
  double eps0 = 0.0625;
  for (double wg : sing_supp(g)) {
    for (double wf : sing_supp(f)) {
      double gap = wg - wf;
      if (gap > kEpsZero && gap < eps0) eps0 = gap;
    }
  }

  // <F . G^eps, t> for eps_j = eps0 * 2^-j, then a Richardson table assuming
  // a power expansion in eps. The table width is capped: deeper columns only
  // amplify quadrature noise (weights grow like 2^k).
  constexpr std::size_t kMaxColumns = 6;
  std::vector<Scalar> row;
  OracleResult best;
  best.error_estimate = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= levels; ++j) {
    double eps = eps0 * std::pow(0.5, j);
    Scalar v = pair(hormander_product(f, translate(g, eps)), t);
    std::vector<Scalar> next(std::min(row.size() + 1, kMaxColumns));
    next[0] = v;
    for (std::size_t k = 1; k < next.size(); ++k) {
      double weight = std::pow(2.0, static_cast<double>(k));
      next[k] = (weight * next[k - 1] - row[k - 1]) / (weight - 1.0);
    }
    if (!row.empty()) {
      double est = std::abs(next.back() - row.back());
      if (est < best.error_estimate) {
        best.value = next.back();
        best.error_estimate = est;
      }
    } else {
      best.value = v;
    }
    row = std::move(next);
  }
  if (!(best.error_estimate <= tol)) {
    throw NonConvergence(
        "epsilon-limit extrapolation settled only to " +
        std::to_string(best.error_estimate) + " (requested " +
        std::to_string(tol) + ")");
  }
  return best;
}

}  // namespace distalg
