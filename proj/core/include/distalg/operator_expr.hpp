#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "distalg/distribution.hpp"

namespace distalg {

enum class Sign { Plus, Minus };

/// delta^(n) star psi (right-acting delta-hat).
Distribution delta_plus(int order, const Distribution& psi);
/// psi star delta^(n) (left-acting delta-hat).
Distribution delta_minus(int order, const Distribution& psi);
/// theta(+-x) star psi.
Distribution project(Sign sign, const Distribution& psi);

/// Composable linear operator on distributions. Primitives: d/dx, -d2/dx2,
/// delta-hat(+-, n), the half-line projectors, scalar multiples, sums,
/// composition, and a domain guard used by the symmetric restriction H_S.
class OperatorExpr {
 public:
  static OperatorExpr derivative();
  static OperatorExpr neg_second_derivative();
  static OperatorExpr delta_hat(Sign sign, int order);
  static OperatorExpr projector(Sign sign);
  static OperatorExpr scaled(Scalar c, OperatorExpr op);
  static OperatorExpr sum(std::vector<OperatorExpr> ops);
  static OperatorExpr compose(OperatorExpr outer, OperatorExpr inner);
  /// Wraps `op` with the H_S domain check; apply throws DomainViolation
  /// outside D(H_S).
  static OperatorExpr hs_guard(OperatorExpr op);

  Distribution apply(const Distribution& psi) const;

 private:
  struct Node;
  explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// H_C = -d2/dx2 + delta-hat'_+ + 2 delta-hat_+ d/dx.
OperatorExpr hamiltonian_confined();
/// H_S: H_C restricted to D(H_S) (domain-guarded).
OperatorExpr hamiltonian_symmetric();
/// H_D = -d2/dx2 + delta-hat'_- + delta-hat_- - delta-hat'_+ + delta-hat_+.
OperatorExpr hamiltonian_dirichlet();

/// CLI operator names: HC, HS, HD, Pplus, Pminus, dx, deltaplus(n),
/// deltaminus(n).
std::optional<OperatorExpr> operator_by_name(std::string_view name);

}  // namespace distalg
