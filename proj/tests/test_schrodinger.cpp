#include <doctest.h>

#include "distalg/dist_parser.hpp"
#include "distalg/errors.hpp"
#include "distalg/schrodinger.hpp"
#include "support/generators.hpp"

using namespace distalg;
using distalg::testing::Rng;

namespace {

WaveFunction wave(const char* text) {
  return WaveFunction(parse_distribution(text));
}

}  // namespace

TEST_CASE("delta-hat examples") {
  Distribution psi = parse_distribution("theta(x)*sin(2*x)");
  // delta' star (theta sin 2x) = sin(0) delta' - 2 cos(0) delta = -2 delta.
  CHECK(dist_equal(delta_plus(1, psi),
                   Distribution::delta(0.0, 0, Scalar{-2.0, 0.0})));
  CHECK(is_zero(delta_plus(0, psi)));

  // Left-acting: psi star delta' sees the left piece, which is 0 here.
  CHECK(is_zero(delta_minus(1, psi)));
  Distribution mirrored = parse_distribution("theta(-x)*sin(2*x)");
  CHECK(dist_equal(delta_minus(1, mirrored),
                   Distribution::delta(0.0, 0, Scalar{-2.0, 0.0})));
}

TEST_CASE("projectors") {
  Distribution psi = parse_distribution("sin(x) + theta(x)*x^2");
  Distribution p = project(Sign::Plus, psi);
  Distribution m = project(Sign::Minus, psi);
  SUBCASE("idempotent") {
    CHECK(dist_equal(project(Sign::Plus, p), p, 1e-8));
    CHECK(dist_equal(project(Sign::Minus, m), m, 1e-8));
  }
  SUBCASE("orthogonal") {
    CHECK(is_zero(project(Sign::Minus, p), 1e-8));
    CHECK(is_zero(project(Sign::Plus, m), 1e-8));
  }
  SUBCASE("partition of unity on delta-free inputs") {
    CHECK(dist_equal(add(p, m), psi, 1e-8));
  }
}

TEST_CASE("H_C annihilates the boundary terms on right-supported data") {
  // H_C (theta f) = -theta f'' with no residual combs, for any smooth f.
  WaveFunction psi = wave("theta(x)*sin(2*x)");
  Distribution img = apply_hc(psi);
  CHECK(img.delta_free());
  CHECK(dist_equal(img, parse_distribution("theta(x)*4*sin(2*x)"), 1e-8));

  WaveFunction cosine = wave("theta(x)*cos(3*x)");
  CHECK(dist_equal(apply_hc(cosine),
                   parse_distribution("theta(x)*9*cos(3*x)"), 1e-8));
}

TEST_CASE("H_D comb coefficients encode the Dirichlet condition") {
  // Generic psi: delta' coefficient 2(psi_-(0) - psi_+(0)), delta
  // coefficient psi_-(0) + psi_+(0) (modulo the smooth -psi'' part).
  WaveFunction psi = wave("theta(-x)*(1 + x) + theta(x)*(3 + x^2)");
  Distribution img = apply_hd(psi);
  const DeltaComb* comb = img.comb_at(0.0);
  REQUIRE(comb != nullptr);
  REQUIRE(comb->coeffs.size() == 2);
  CHECK(std::abs(comb->coeffs[0] - Scalar{1.0 + 3.0, 0.0}) < 1e-10);
  CHECK(std::abs(comb->coeffs[1] - Scalar{2.0 * (1.0 - 3.0), 0.0}) < 1e-10);

  // Both one-sided values zero: the image is delta-free.
  WaveFunction ok = wave("theta(-x)*x + theta(x)*(x + x^2)");
  CHECK(apply_hd(ok).delta_free());
}

TEST_CASE("domain predicates") {
  CHECK(in_domain_max_hc(wave("theta(x)*sin(2*x)")));
  CHECK_FALSE(in_domain_max_hc(wave("theta(-x)*x + theta(x)*x")));
  CHECK_FALSE(in_domain_max_hc(wave("cos(x)")));  // psi_-(0) = 1

  CHECK(in_domain_hs(wave("theta(x)*x^2*exp(-x^2)")));
  CHECK_FALSE(in_domain_hs(wave("theta(x)*sin(2*x)")));  // psi_+'(0) = 2

  CHECK(in_domain_max_hd(wave("theta(-x)*sin(x) + theta(x)*sin(3*x)")));
  CHECK_FALSE(in_domain_max_hd(wave("theta(x)*cos(x)")));

  CHECK_THROWS_AS(in_domain_max_hc(wave("theta(x-1)*(x-1)^2")),
                  UnsupportedShape);
}

TEST_CASE("H_S refuses data outside its domain") {
  CHECK_THROWS_AS(apply_hs(wave("theta(x)*sin(2*x)")), DomainViolation);
  WaveFunction inside = wave("theta(x)*x^2*exp(-x^2)");
  Distribution img = apply_hs(inside);
  CHECK(img.delta_free());
  CHECK(dist_equal(img, apply_hc(inside), 1e-8));
}

TEST_CASE("H_D commutes with the projectors on its maximal domain") {
  Rng rng(8001);
  for (int it = 0; it < 10; ++it) {
    WaveFunction psi = distalg::testing::random_dirichlet_wave(rng);
    CHECK(is_zero(commutator_hd_projector(Sign::Plus, psi), 1e-8));
    CHECK(is_zero(commutator_hd_projector(Sign::Minus, psi), 1e-8));
  }
  CHECK_THROWS_AS(commutator_hd_projector(Sign::Plus, wave("theta(x)*cos(x)")),
                  DomainViolation);
}

TEST_CASE("eigenfunction checks") {
  // H_C: theta(x) (a sin kx + b cos kx) has energy k^2 with no boundary
  // condition on the right-hand data.
  CHECK(is_eigenfunction(hamiltonian_confined(), wave("theta(x)*sin(2*x)"),
                         EnergyValue::from_wavenumber(2.0), 1e-9));
  CHECK(is_eigenfunction(hamiltonian_confined(),
                         wave("theta(x)*(sin(3*x) - 2*cos(3*x))"),
                         EnergyValue::from_wavenumber(3.0), 1e-9));
  CHECK_FALSE(is_eigenfunction(hamiltonian_confined(),
                               wave("theta(x)*sin(2*x)"),
                               EnergyValue::from_wavenumber(1.0), 1e-9));

  // H_D: half-line sine waves on either side.
  CHECK(is_eigenfunction(hamiltonian_dirichlet(), wave("theta(x)*sin(2*x)"),
                         EnergyValue::from_wavenumber(2.0), 1e-9));
  CHECK(is_eigenfunction(hamiltonian_dirichlet(), wave("theta(-x)*sin(5*x)"),
                         EnergyValue::from_wavenumber(5.0), 1e-9));
}

TEST_CASE("inner products") {
  WaveFunction f = wave("theta(x)*exp(-x)");
  // integral_0^inf e^{-2x} = 1/2.
  CHECK(std::abs(inner_product(f, f) - Scalar{0.5, 0.0}) < 1e-9);

  WaveFunction left = wave("theta(-x)*exp(x)");
  CHECK(std::abs(inner_product(f, left)) < 1e-12);

  // Conjugate symmetry with a complex factor.
  WaveFunction g = wave("theta(x)*(1 + 2*i)*x*exp(-x)");
  Scalar fg = inner_product(f, g);
  Scalar gf = inner_product(g, f);
  CHECK(std::abs(fg - std::conj(gf)) < 1e-10);

  CHECK_THROWS_AS(inner_product(wave("cos(x)"), wave("cos(x)")),
                  DecayCheckFailed);
}

TEST_CASE("symmetry defect distinguishes H_C from its restriction") {
  WaveFunction phi = wave("theta(x)*x*exp(-x)");
  WaveFunction psi = wave("theta(x)*exp(-x)");
  Scalar defect = symmetry_defect(hamiltonian_confined(), phi, psi);
  CHECK(std::abs(std::abs(defect) - 1.0) < 1e-6);

  Rng rng(8002);
  for (int it = 0; it < 5; ++it) {
    WaveFunction a = distalg::testing::random_hs_wave(rng);
    WaveFunction b = distalg::testing::random_hs_wave(rng);
    CHECK(std::abs(symmetry_defect(hamiltonian_symmetric(), a, b)) < 1e-8);
  }
  for (int it = 0; it < 5; ++it) {
    WaveFunction a = distalg::testing::random_dirichlet_wave(rng);
    WaveFunction b = distalg::testing::random_dirichlet_wave(rng);
    CHECK(std::abs(symmetry_defect(hamiltonian_dirichlet(), a, b)) < 1e-8);
  }
}

TEST_CASE("wave functions must be delta-free") {
  CHECK_THROWS_AS(WaveFunction(parse_distribution("delta(x)")), NotInL2);
  CHECK_THROWS_AS(
      WaveFunction(parse_distribution("theta(x)*exp(-x) + delta(x-1)")),
      NotInL2);
}

TEST_CASE("operator expressions are linear") {
  Rng rng(8003);
  OperatorExpr hc = hamiltonian_confined();
  for (int it = 0; it < 10; ++it) {
    Distribution a = distalg::testing::random_dirichlet_wave(rng).dist();
    Distribution b = distalg::testing::random_dirichlet_wave(rng).dist();
    Scalar c{distalg::testing::uniform(rng, -2.0, 2.0), 0.0};
    CHECK(dist_equal(hc.apply(add(a, scale(c, b))),
                     add(hc.apply(a), scale(c, hc.apply(b))), 1e-7));
  }
}

TEST_CASE("operator_by_name") {
  CHECK(operator_by_name("HC").has_value());
  CHECK(operator_by_name("HS").has_value());
  CHECK(operator_by_name("HD").has_value());
  CHECK(operator_by_name("Pplus").has_value());
  CHECK(operator_by_name("deltaminus(2)").has_value());
  CHECK_FALSE(operator_by_name("H?").has_value());
  CHECK_FALSE(operator_by_name("").has_value());

  Distribution psi = parse_distribution("theta(x)*sin(2*x)");
  CHECK(dist_equal(operator_by_name("HC")->apply(psi),
                   parse_distribution("theta(x)*4*sin(2*x)"), 1e-8));
}
