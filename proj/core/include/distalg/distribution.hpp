#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distalg/scalar.hpp"
#include "distalg/smooth_expr.hpp"

namespace distalg {

/// Finite linear combination sum_j coeffs[j] * delta^(j) at one point.
/// Trailing zero coefficients are stripped; an all-zero comb is represented
/// by absence from the enclosing Distribution, never stored.
struct DeltaComb {
  double point = 0.0;
  std::vector<Scalar> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// g * delta^(n)_w expanded via
///   g * delta^(n)_w = sum_k (-1)^k C(n,k) g^(k)(w) delta^(n-k)_w,
/// applied coefficient-wise to the whole comb.
DeltaComb smooth_times_comb(const SmoothExpr& g, const DeltaComb& comb);

/// The C_p^inf regular part: strictly increasing breakpoints x_1 < ... < x_N
/// and N+1 pieces, piece k defined on (x_k, x_{k+1}) with x_0 = -inf,
/// x_{N+1} = +inf. Pieces are globally smooth expressions, so one-sided
/// limits of every derivative exist at each breakpoint.
struct PiecewiseSmooth {
  std::vector<double> breakpoints;
  std::vector<SmoothExpr> pieces{SmoothExpr::constant(0.0)};
};

/// An element F = f + sum_{w in V_F} Delta_w of the algebra A: piecewise
/// smooth part plus finitely many delta combs. Always held in normalized
/// form: comb points appear among the breakpoints, removable breakpoints are
/// pruned, comb coefficients are chopped.
class Distribution {
 public:
  /// The zero distribution.
  Distribution() = default;

  static Distribution from_smooth(SmoothExpr e);
  /// theta(x - a), or theta(a - x) when reflected.
  static Distribution heaviside(double a = 0.0, bool reflected = false);
  /// coeff * delta^(order) at `point`.
  static Distribution delta(double point = 0.0, int order = 0,
                            Scalar coeff = Scalar{1.0, 0.0});
  static Distribution make(PiecewiseSmooth smooth, std::vector<DeltaComb> combs);

  const std::vector<double>& breakpoints() const {
    return smooth_.breakpoints;
  }
  const std::vector<SmoothExpr>& pieces() const { return smooth_.pieces; }
  const std::vector<DeltaComb>& combs() const { return combs_; }

  bool delta_free() const { return combs_.empty(); }
  bool is_zero_structural() const {
    return smooth_.breakpoints.empty() && combs_.empty() &&
           smooth_.pieces[0].is_zero();
  }

  /// Piece governing the open interval that contains x (x not a breakpoint
  /// for a well-defined answer; at a breakpoint the right piece is returned).
  const SmoothExpr& piece_at(double x) const;
  /// Piece on the k-th interval, k in [0, breakpoints().size()].
  const SmoothExpr& piece(std::size_t k) const { return smooth_.pieces[k]; }

  const DeltaComb* comb_at(double point, double tol = kEpsZero) const;

 private:
  PiecewiseSmooth smooth_;
  std::vector<DeltaComb> combs_;  // sorted by point
};

Distribution add(const Distribution& f, const Distribution& g);
Distribution scale(Scalar c, const Distribution& f);
Distribution sub(const Distribution& f, const Distribution& g);

/// Distributional derivative: classical derivative on pieces, jump deltas
/// (f(w+) - f(w-)) * delta_w at each breakpoint, comb orders shifted up.
Distribution derivative(const Distribution& f);

/// F^eps with F^eps(x) = F(x + eps): breakpoints and comb points move to
/// w - eps, pieces are composed with x -> x + eps.
Distribution translate(const Distribution& f, double eps);

/// Hormander product: requires disjoint singular supports, throws
/// OverlappingSingularSupports otherwise (use star then).
Distribution hormander_product(const Distribution& f, const Distribution& g);

/// The star product in closed form: smooth parts multiply on the merged
/// grid; at each grid point the comb of F meets the right-hand piece of G
/// and the comb of G meets the left-hand piece of F.
Distribution star(const Distribution& f, const Distribution& g);

/// Zeroes the distribution outside the open interval (lo, hi); pass
/// +-infinity for half-open restriction. Combs outside are dropped.
Distribution restrict_to(const Distribution& f, double lo, double hi);

/// Singular support V_F: breakpoints surviving normalization.
std::vector<double> sing_supp(const Distribution& f);

/// True iff F normalizes to zero within tol: no combs above tol and every
/// piece below tol on its (window-clipped) interval.
bool is_zero(const Distribution& f, double tol = kEpsZero);

/// Normalized equality: is_zero(F - G, tol).
bool dist_equal(const Distribution& f, const Distribution& g,
                double tol = kEpsZero);

/// JSON wire format:
///   { "breakpoints": [...], "pieces": ["<expr>", ...],
///     "deltas": [{"point": w, "coeffs": [[re, im], ...]}, ...] }
std::string to_json(const Distribution& f);
Distribution from_json(const std::string& text);

/// Human-readable normalized form using theta/delta syntax; re-parses to an
/// equal distribution through the CLI grammar.
std::string format_dist(const Distribution& f);

}  // namespace distalg
