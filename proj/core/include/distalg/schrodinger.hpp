#pragma once

#include <cmath>

#include "distalg/operator_expr.hpp"
#include "distalg/pairing.hpp"

namespace distalg {

/// A delta-free distribution interpreted as an L2(R) candidate
/// psi = theta(-x) psi_-(x) + theta(x) psi_+(x).
class WaveFunction {
 public:
  /// Throws NotInL2 if the distribution carries delta combs.
  explicit WaveFunction(Distribution d);

  const Distribution& dist() const { return dist_; }

  /// The smooth data left / right of the origin. Throw UnsupportedShape if
  /// the function has breakpoints other than 0.
  SmoothExpr left_piece() const;
  SmoothExpr right_piece() const;

 private:
  Distribution dist_;
};

/// E = k^2 in units with hbar = 1, 2m = 1.
struct EnergyValue {
  double energy = 0.0;

  static EnergyValue from_energy(double e);
  static EnergyValue from_wavenumber(double k) { return EnergyValue{k * k}; }
  double wavenumber() const { return std::sqrt(energy); }
};

Distribution apply_hc(const WaveFunction& psi);
/// Throws DomainViolation outside D(H_S).
Distribution apply_hs(const WaveFunction& psi);
Distribution apply_hd(const WaveFunction& psi);

/// psi_-(0) = psi_-'(0) = 0 plus a numeric square-integrability pre-filter.
bool in_domain_max_hc(const WaveFunction& psi);
/// D_max(H_C) condition plus psi_+(0) = psi_+'(0) = 0.
bool in_domain_hs(const WaveFunction& psi);
/// Dirichlet condition psi_-(0) = psi_+(0) = 0, derived from the comb
/// coefficients of H_D: delta'-coefficient 2(psi_-(0) - psi_+(0)) and
/// delta-coefficient psi_-(0) + psi_+(0) vanish exactly then.
bool in_domain_max_hd(const WaveFunction& psi);

/// [H_D, P_sign] psi; throws DomainViolation outside D_max(H_D).
Distribution commutator_hd_projector(Sign sign, const WaveFunction& psi);

/// True iff H(psi) - E psi normalizes to zero within tol.
bool is_eigenfunction(const OperatorExpr& h, const WaveFunction& psi,
                      EnergyValue e, double tol = kEpsZero);

/// Truncation window for L2 inner products.
inline constexpr double kL2Window = 40.0;

/// <phi, psi> = integral of conj(phi) psi over [-L, L]; throws
/// DecayCheckFailed when the integrand is above 1e-12 at +-L.
Scalar inner_product(const WaveFunction& phi, const WaveFunction& psi,
                     double window = kL2Window, double tol = kTolQuad);

/// <H phi, psi> - <phi, H psi>; throws NotInL2 when either image carries
/// delta combs.
Scalar symmetry_defect(const OperatorExpr& h, const WaveFunction& phi,
                       const WaveFunction& psi, double window = kL2Window);

}  // namespace distalg
