#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "distalg/distribution.hpp"

namespace distalg {

/// Surface AST for distribution expressions:
///   dist   := term (('+'|'-') term)* ;
///   term   := factor (('*'|'**') factor)* ;
///   factor := scalar | smooth | theta(shift) | delta[primes](shift)
///           | delta^(n)(shift) | D[dist] | '(' dist ')' ;
///   shift  := ['-'] 'x' (('+'|'-') number)? ;
/// `*` is the strict Hormander product (disjoint singular supports),
/// `**` is the star product.
class DistExpr {
 public:
  enum class Kind {
    Const,
    Var,
    Sin,
    Cos,
    Exp,
    Pow,
    Neg,
    Add,
    Sub,
    Hormander,  // '*'
    Star,       // '**'
    Derivative, // D[...]
    Theta,
    Delta,
  };

  static DistExpr constant(Scalar c);
  static DistExpr variable();
  static DistExpr unary(Kind kind, DistExpr child);          // Sin/Cos/Exp/Neg/Derivative
  static DistExpr binary(Kind kind, DistExpr a, DistExpr b); // Add/Sub/Hormander/Star
  static DistExpr power(DistExpr base, int exponent);
  /// theta(x - point), reflected: theta(-(x - point)).
  static DistExpr theta(double point, bool reflected);
  /// delta^(order)(x - point), reflected argument allowed.
  static DistExpr delta(int order, double point, bool reflected);

  Kind kind() const;
  Scalar value() const;
  int exponent() const;       // Pow: exponent; Delta: order
  double point() const;       // Theta/Delta
  bool reflected() const;     // Theta/Delta
  const std::vector<DistExpr>& children() const;

  /// Canonical text; whitespace and parenthesization are normalized.
  std::string str() const;

 private:
  struct Node;
  explicit DistExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws SyntaxError with position on malformed input.
DistExpr parse_dist(std::string_view text);

/// Evaluates the AST bottom-up into a normalized Distribution.
/// '*' lowers through hormander_product and propagates
/// OverlappingSingularSupports (the message hints at '**').
Distribution lower(const DistExpr& e);

/// parse + lower in one step.
Distribution parse_distribution(std::string_view text);

}  // namespace distalg
