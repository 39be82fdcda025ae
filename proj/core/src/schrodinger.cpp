#include "distalg/schrodinger.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "distalg/errors.hpp"

namespace distalg {

namespace {

/// Boundedness bound used as the square-integrability pre-filter: pieces on
/// the unbounded ends must stay below this at the truncation boundary.
constexpr double kGrowthBound = 1e6;

/// Integrand magnitude allowed at +-L before the truncation is deemed
/// unreliable.
constexpr double kDecayBound = 1e-12;

}  // namespace

WaveFunction::WaveFunction(Distribution d) : dist_(std::move(d)) {
  if (!dist_.delta_free()) {
    throw NotInL2("wave functions carry no delta combs");
  }
}

namespace {

void require_origin_shape(const Distribution& d) {
  for (double w : d.breakpoints()) {
    if (std::abs(w) > kEpsZero) {
      throw UnsupportedShape(
          "wave function has a breakpoint at x = " + std::to_string(w) +
          "; only a single breakpoint at the origin is supported");
    }
  }
}

}  // namespace

SmoothExpr WaveFunction::left_piece() const {
  require_origin_shape(dist_);
  return dist_.piece(0);
}

SmoothExpr WaveFunction::right_piece() const {
  require_origin_shape(dist_);
  return dist_.piece(dist_.breakpoints().size());
}

EnergyValue EnergyValue::from_energy(double e) {
  if (e < 0.0) {
    throw Error("the implemented eigenfamily has E = k^2 >= 0");
  }
  return EnergyValue{e};
}

Distribution apply_hc(const WaveFunction& psi) {
  return hamiltonian_confined().apply(psi.dist());
}

Distribution apply_hs(const WaveFunction& psi) {
  return hamiltonian_symmetric().apply(psi.dist());
}

Distribution apply_hd(const WaveFunction& psi) {
  return hamiltonian_dirichlet().apply(psi.dist());
}

namespace {

bool square_integrable_prefilter(const WaveFunction& psi) {
  const Distribution& d = psi.dist();
  double L = kL2Window;
  return std::abs(d.piece_at(-L).eval(-L)) <= kGrowthBound &&
         std::abs(d.piece_at(L).eval(L)) <= kGrowthBound;
}

}  // namespace

bool in_domain_max_hc(const WaveFunction& psi) {
  if (!square_integrable_prefilter(psi)) return false;
  auto data = taylor_data(psi.left_piece(), 0.0, 1);
  return std::abs(data[0]) <= kEpsZero && std::abs(data[1]) <= kEpsZero;
}

bool in_domain_hs(const WaveFunction& psi) {
  if (!in_domain_max_hc(psi)) return false;
  auto data = taylor_data(psi.right_piece(), 0.0, 1);
  return std::abs(data[0]) <= kEpsZero && std::abs(data[1]) <= kEpsZero;
}

bool in_domain_max_hd(const WaveFunction& psi) {
  if (!square_integrable_prefilter(psi)) return false;
  return std::abs(psi.left_piece().eval(0.0)) <= kEpsZero &&
         std::abs(psi.right_piece().eval(0.0)) <= kEpsZero;
}

Distribution commutator_hd_projector(Sign sign, const WaveFunction& psi) {
  if (!in_domain_max_hd(psi)) {
    throw DomainViolation(
        "[H_D, P] is asserted on D_max(H_D): psi_-(0) = psi_+(0) = 0");
  }
  OperatorExpr hd = hamiltonian_dirichlet();
  return sub(hd.apply(project(sign, psi.dist())),
             project(sign, hd.apply(psi.dist())));
}

bool is_eigenfunction(const OperatorExpr& h, const WaveFunction& psi,
                      EnergyValue e, double tol) {
  Distribution residual =
      sub(h.apply(psi.dist()), scale(Scalar{e.energy, 0.0}, psi.dist()));
  return is_zero(residual, tol);
}

Scalar inner_product(const WaveFunction& phi, const WaveFunction& psi,
                     double window, double tol) {
  const Distribution& f = phi.dist();
  const Distribution& g = psi.dist();
  const double L = window;

  for (double edge : {-L, L}) {
    double mag = std::abs(f.piece_at(edge).eval(edge)) *
                 std::abs(g.piece_at(edge).eval(edge));
    if (mag > kDecayBound) {
      throw DecayCheckFailed(
          "integrand magnitude " + std::to_string(mag) + " at x = " +
          std::to_string(edge) + " exceeds the truncation bound");
    }
  }

  std::vector<double> cuts{-L};
  std::vector<double> bps = f.breakpoints();
  bps.insert(bps.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(bps.begin(), bps.end());
  for (double w : bps) {
    if (w > -L && w < L && (cuts.empty() || std::abs(cuts.back() - w) >
                                                kEpsZero)) {
      cuts.push_back(w);
    }
  }
  cuts.push_back(L);

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  Scalar total{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double a = cuts[i];
    double b = cuts[i + 1];
    double mid = 0.5 * (a + b);
    const SmoothExpr fp = f.piece_at(mid);
    const SmoothExpr gp = g.piece_at(mid);
    if (fp.is_zero() || gp.is_zero()) continue;
    auto integrand = [&](double x) {
      return std::conj(fp.eval(x)) * gp.eval(x);
    };
    double err = 0.0;
    double re = Quadrature::integrate(
        [&](double x) { return integrand(x).real(); }, a, b, 12, tol, &err);
    double im = Quadrature::integrate(
        [&](double x) { return integrand(x).imag(); }, a, b, 12, tol, &err);
    total += Scalar{re, im};
  }
  return total;
}

Scalar symmetry_defect(const OperatorExpr& h, const WaveFunction& phi,
                       const WaveFunction& psi, double window) {
  Distribution h_phi = h.apply(phi.dist());
  Distribution h_psi = h.apply(psi.dist());
  if (!h_phi.delta_free() || !h_psi.delta_free()) {
    throw NotInL2(
        "operator image carries delta combs, so the L2 pairing is undefined");
  }
  return inner_product(WaveFunction(h_phi), psi, window) -
         inner_product(phi, WaveFunction(h_psi), window);
}

}  // namespace distalg
