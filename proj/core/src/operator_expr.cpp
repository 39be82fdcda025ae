#include "distalg/operator_expr.hpp"

#include <string>

#include "distalg/errors.hpp"
#include "distalg/schrodinger.hpp"

namespace distalg {

Distribution delta_plus(int order, const Distribution& psi) {
  return star(Distribution::delta(0.0, order), psi);
}

Distribution delta_minus(int order, const Distribution& psi) {
  return star(psi, Distribution::delta(0.0, order));
}

Distribution project(Sign sign, const Distribution& psi) {
  return star(Distribution::heaviside(0.0, sign == Sign::Minus), psi);
}

struct OperatorExpr::Node {
  enum class Kind {
    Derivative,
    NegSecondDerivative,
    DeltaHat,
    Projector,
    Scaled,
    Sum,
    Compose,
    HsGuard,
  };
  Kind kind;
  Sign sign = Sign::Plus;
  int order = 0;
  Scalar factor{1.0, 0.0};
  std::vector<OperatorExpr> kids;
};

OperatorExpr OperatorExpr::derivative() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Derivative;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::neg_second_derivative() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::NegSecondDerivative;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::delta_hat(Sign sign, int order) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::DeltaHat;
  n->sign = sign;
  n->order = order;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::projector(Sign sign) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Projector;
  n->sign = sign;
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::scaled(Scalar c, OperatorExpr op) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Scaled;
  n->factor = c;
  n->kids.push_back(std::move(op));
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::sum(std::vector<OperatorExpr> ops) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Sum;
  n->kids = std::move(ops);
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::compose(OperatorExpr outer, OperatorExpr inner) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Compose;
  n->kids.push_back(std::move(outer));
  n->kids.push_back(std::move(inner));
  return OperatorExpr(std::move(n));
}

OperatorExpr OperatorExpr::hs_guard(OperatorExpr op) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::HsGuard;
  n->kids.push_back(std::move(op));
  return OperatorExpr(std::move(n));
}

Distribution OperatorExpr::apply(const Distribution& psi) const {
  using Kind = Node::Kind;
  switch (node_->kind) {
    case Kind::Derivative:
      return distalg::derivative(psi);
    case Kind::NegSecondDerivative:
      return scale(Scalar{-1.0, 0.0},
                   distalg::derivative(distalg::derivative(psi)));
    case Kind::DeltaHat:
      return node_->sign == Sign::Plus ? delta_plus(node_->order, psi)
                                       : delta_minus(node_->order, psi);
    case Kind::Projector:
      return project(node_->sign, psi);
    case Kind::Scaled:
      return scale(node_->factor, node_->kids[0].apply(psi));
    case Kind::Sum: {
      Distribution acc;
      for (const auto& op : node_->kids) acc = add(acc, op.apply(psi));
      return acc;
    }
    case Kind::Compose:
      return node_->kids[0].apply(node_->kids[1].apply(psi));
    case Kind::HsGuard: {
      WaveFunction wf(psi);
      if (!in_domain_hs(wf)) {
        throw DomainViolation(
            "H_S requires psi_-(0) = psi_-'(0) = psi_+(0) = psi_+'(0) = 0");
      }
      return node_->kids[0].apply(psi);
    }
  }
  return {};
}

OperatorExpr hamiltonian_confined() {
  return OperatorExpr::sum(
      {OperatorExpr::neg_second_derivative(),
       OperatorExpr::delta_hat(Sign::Plus, 1),
       OperatorExpr::scaled(
           Scalar{2.0, 0.0},
           OperatorExpr::compose(OperatorExpr::delta_hat(Sign::Plus, 0),
                                 OperatorExpr::derivative()))});
}

OperatorExpr hamiltonian_symmetric() {
  return OperatorExpr::hs_guard(hamiltonian_confined());
}

OperatorExpr hamiltonian_dirichlet() {
  return OperatorExpr::sum(
      {OperatorExpr::neg_second_derivative(),
       OperatorExpr::delta_hat(Sign::Minus, 1),
       OperatorExpr::delta_hat(Sign::Minus, 0),
       OperatorExpr::scaled(Scalar{-1.0, 0.0},
                            OperatorExpr::delta_hat(Sign::Plus, 1)),
       OperatorExpr::delta_hat(Sign::Plus, 0)});
}

std::optional<OperatorExpr> operator_by_name(std::string_view name) {
  if (name == "HC") return hamiltonian_confined();
  if (name == "HS") return hamiltonian_symmetric();
  if (name == "HD") return hamiltonian_dirichlet();
  if (name == "Pplus") return OperatorExpr::projector(Sign::Plus);
  if (name == "Pminus") return OperatorExpr::projector(Sign::Minus);
  if (name == "dx") return OperatorExpr::derivative();
  for (std::string_view head : {"deltaplus(", "deltaminus("}) {
    if (name.size() > head.size() && name.substr(0, head.size()) == head &&
        name.back() == ')') {
      std::string digits(name.substr(head.size(),
                                     name.size() - head.size() - 1));
      if (!digits.empty() &&
          digits.find_first_not_of("0123456789") == std::string::npos) {
        int order = std::stoi(digits);
        return OperatorExpr::delta_hat(
            head[5] == 'p' ? Sign::Plus : Sign::Minus, order);
      }
    }
  }
  return std::nullopt;
}

}  // namespace distalg
