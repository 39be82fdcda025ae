#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "distalg/scalar.hpp"

namespace distalg {

/// Immutable expression tree over the grammar
///   {constant, x, +, -, *, integer power, sin, cos, exp, negation}.
/// Division, fractional powers and the like are excluded so that every
/// representable expression is infinitely differentiable on all of R.
class SmoothExpr {
 public:
  enum class Kind { Constant, Variable, Add, Mul, Pow, Sin, Cos, Exp, Neg };

  /// Default-constructs the constant 0.
  SmoothExpr();

  static SmoothExpr constant(Scalar c);
  static SmoothExpr constant(double c) { return constant(Scalar{c, 0.0}); }
  static SmoothExpr variable();
  static SmoothExpr add(std::vector<SmoothExpr> terms);
  static SmoothExpr add(SmoothExpr a, SmoothExpr b);
  static SmoothExpr sub(SmoothExpr a, SmoothExpr b);
  static SmoothExpr mul(std::vector<SmoothExpr> factors);
  static SmoothExpr mul(SmoothExpr a, SmoothExpr b);
  static SmoothExpr pow(SmoothExpr base, int exponent);  // exponent >= 0
  static SmoothExpr sin(SmoothExpr e);
  static SmoothExpr cos(SmoothExpr e);
  static SmoothExpr exp(SmoothExpr e);
  static SmoothExpr neg(SmoothExpr e);

  Kind kind() const;
  Scalar value() const;    // Constant only
  int exponent() const;    // Pow only
  const std::vector<SmoothExpr>& children() const;

  /// Evaluates at a real point. Throws EvalOverflow on a non-finite result.
  Scalar eval(double x) const;

  /// Symbolic derivative; total on the grammar.
  SmoothExpr diff() const;

  /// Canonical form: flattened sums/products, folded constants, sorted
  /// commutative operands. Confluent on the small rewrite set; equality
  /// beyond that is sampling-based (see expr_equal).
  SmoothExpr normalized() const;

  /// Substitutes x -> x + c.
  SmoothExpr shifted(double c) const;

  /// Text form; re-parses to the same normalized tree.
  std::string str() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Structural equality of trees (exact scalar comparison).
  friend bool operator==(const SmoothExpr& a, const SmoothExpr& b);

  /// Deterministic total order used for canonical sorting.
  static int compare(const SmoothExpr& a, const SmoothExpr& b);

 private:
  struct Node;
  explicit SmoothExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the smooth sub-grammar; the result is normalized.
/// Throws SyntaxError on malformed text or non-smooth constructs (`/`,
/// `sqrt`, ...), naming the smoothness restriction.
SmoothExpr parse_smooth(std::string_view text);

/// (e(x0), e'(x0), ..., e^(n)(x0)) via truncated-Taylor (jet) propagation;
/// machine-precision and linear in the tree size per coefficient.
std::vector<Scalar> taylor_data(const SmoothExpr& e, double x0, int order);

/// Sampling equality on [lo, hi]: |e1 - e2| <= tol at 17 Chebyshev nodes.
/// A semi-decision, not a proof.
bool expr_equal(const SmoothExpr& e1, const SmoothExpr& e2, double lo,
                double hi, double tol = kEpsZero);

std::string format_scalar(Scalar c);

}  // namespace distalg
