#include <doctest.h>

#include "distalg/dist_parser.hpp"
#include "distalg/distribution.hpp"
#include "distalg/errors.hpp"
#include "support/generators.hpp"

using namespace distalg;
using distalg::testing::Rng;

namespace {

Distribution theta() { return Distribution::heaviside(); }
Distribution dirac() { return Distribution::delta(); }

}  // namespace

TEST_CASE("construction normalizes") {
  SUBCASE("heaviside keeps its jump") {
    Distribution t = theta();
    REQUIRE(t.breakpoints().size() == 1);
    CHECK(t.piece(0).is_zero());
    CHECK(t.piece(1).is_one());
  }
  SUBCASE("removable breakpoint is pruned") {
    PiecewiseSmooth ps;
    ps.breakpoints = {0.0};
    ps.pieces = {parse_smooth("sin(x)"), parse_smooth("sin(x)")};
    Distribution d = Distribution::make(std::move(ps), {});
    CHECK(d.breakpoints().empty());
  }
  SUBCASE("delta inserts a trivial breakpoint") {
    Distribution d = dirac();
    REQUIRE(d.combs().size() == 1);
    CHECK(d.combs()[0].point == 0.0);
    CHECK(d.breakpoints().size() == 1);
  }
  SUBCASE("all-zero comb is dropped") {
    Distribution d = Distribution::delta(0.0, 2, Scalar{1e-12, 0.0});
    CHECK(d.is_zero_structural());
  }
}

TEST_CASE("linear structure") {
  CHECK(dist_equal(add(dirac(), dirac()),
                   Distribution::delta(0.0, 0, Scalar{2.0, 0.0})));
  CHECK(is_zero(add(theta(), scale(Scalar{-1.0, 0.0}, theta()))));
  Distribution mixed = add(theta(), Distribution::delta(0.0, 1));
  REQUIRE(mixed.combs().size() == 1);
  CHECK(mixed.combs()[0].coeffs.size() == 2);
  CHECK(scale(Scalar{0.0, 0.0}, mixed).is_zero_structural());
}

TEST_CASE("distributional derivative") {
  CHECK(dist_equal(derivative(theta()), dirac()));
  CHECK(dist_equal(derivative(dirac()), Distribution::delta(0.0, 1)));
  CHECK(dist_equal(derivative(derivative(theta())),
                   Distribution::delta(0.0, 1)));

  // theta(x) sin(2x): continuous at 0, so no jump delta.
  Distribution f = parse_distribution("theta(x)*sin(2*x)");
  Distribution df = derivative(f);
  CHECK(df.delta_free());
  CHECK(dist_equal(df, parse_distribution("theta(x)*2*cos(2*x)"), 1e-8));
}

TEST_CASE("translate shifts support") {
  Distribution d = translate(dirac(), 0.25);
  REQUIRE(d.combs().size() == 1);
  CHECK(d.combs()[0].point == doctest::Approx(-0.25));

  Distribution t = translate(theta(), 1.0);
  REQUIRE(t.breakpoints().size() == 1);
  CHECK(t.breakpoints()[0] == doctest::Approx(-1.0));
  CHECK(dist_equal(t, Distribution::heaviside(-1.0)));
}

TEST_CASE("hormander product") {
  Distribution delta_at_1 = Distribution::delta(1.0);
  CHECK(dist_equal(hormander_product(theta(), delta_at_1), delta_at_1));
  CHECK_THROWS_AS(hormander_product(dirac(), dirac()),
                  OverlappingSingularSupports);
  CHECK(dist_equal(hormander_product(theta(), Distribution::heaviside(1.0)),
                   Distribution::heaviside(1.0)));
}

TEST_CASE("smooth_times_comb uses one-sided Taylor data") {
  DeltaComb d0{0.0, {Scalar{1.0, 0.0}}};
  DeltaComb out = smooth_times_comb(parse_smooth("cos(x)"), d0);
  REQUIRE(out.coeffs.size() == 1);
  CHECK(out.coeffs[0] == Scalar{1.0, 0.0});

  // sin(kx) * delta' = sin(0) delta' - k cos(0) delta = -k delta.
  DeltaComb d1{0.0, {Scalar{0.0, 0.0}, Scalar{1.0, 0.0}}};
  DeltaComb out1 = smooth_times_comb(parse_smooth("sin(3*x)"), d1);
  REQUIRE(out1.coeffs.size() == 1);
  CHECK(std::abs(out1.coeffs[0] - Scalar{-3.0, 0.0}) < 1e-12);

  DeltaComb d3{0.5, {Scalar{1.0, 0.0}, Scalar{0.0, 0.0}, Scalar{2.0, 0.0}}};
  DeltaComb out3 = smooth_times_comb(parse_smooth("1"), d3);
  CHECK(out3.coeffs == d3.coeffs);
}

TEST_CASE("star product witnesses") {
  CHECK(dist_equal(star(dirac(), theta()), dirac()));
  CHECK(is_zero(star(theta(), dirac())));
  CHECK(is_zero(star(dirac(), dirac())));
  CHECK(dist_equal(star(theta(), theta()), theta()));
  Distribution cosine = parse_distribution("cos(x)");
  CHECK(dist_equal(star(cosine, dirac()), dirac()));
  CHECK(dist_equal(star(dirac(), cosine), dirac()));
}

TEST_CASE("restriction and singular support") {
  Distribution r = restrict_to(add(dirac(), theta()), 0.5, 2.0);
  CHECK(r.delta_free());
  CHECK(expr_equal(r.piece_at(1.0), parse_smooth("1"), 0.6, 1.9));

  CHECK(sing_supp(parse_distribution("theta(x)*sin(2*x)")) ==
        std::vector<double>{0.0});
  CHECK(sing_supp(parse_distribution("sin(x)")).empty());
}

TEST_CASE("JSON round trip preserves normalized equality") {
  Rng rng(4001);
  for (int it = 0; it < 50; ++it) {
    Distribution d =
        distalg::testing::random_distribution(rng, 2, 3, /*complex=*/true);
    Distribution back = from_json(to_json(d));
    CHECK(dist_equal(d, back, 1e-8));
  }
}

TEST_CASE("JSON errors") {
  CHECK_THROWS_AS(from_json("{"), SyntaxError);
  CHECK_THROWS_AS(from_json(R"({"breakpoints":[0],"pieces":["0"],"deltas":[]})"),
                  SyntaxError);
}
