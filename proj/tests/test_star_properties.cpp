#include <doctest.h>

#include "distalg/dist_parser.hpp"
#include "distalg/distribution.hpp"
#include "distalg/errors.hpp"
#include "support/generators.hpp"

// Property tests for the algebraic laws of (A, +, star) on the randomized
// family: associativity, Leibniz, unity, pointwise-product consistency,
// Hormander consistency, and the non-commutativity witness.

using namespace distalg;
using distalg::testing::Rng;

TEST_CASE("star is associative") {
  Rng rng(6001);
  for (int it = 0; it < 30; ++it) {
    Distribution f = distalg::testing::random_distribution(rng, 1, 2, true);
    Distribution g = distalg::testing::random_distribution(rng, 1, 2, true);
    Distribution h = distalg::testing::random_distribution(rng, 1, 2, true);
    CHECK(dist_equal(star(star(f, g), h), star(f, star(g, h)), 1e-7));
  }
}

TEST_CASE("star satisfies the Leibniz rule") {
  Rng rng(6002);
  for (int it = 0; it < 30; ++it) {
    Distribution f = distalg::testing::random_distribution(rng, 2, 3, true);
    Distribution g = distalg::testing::random_distribution(rng, 2, 3, true);
    Distribution lhs = derivative(star(f, g));
    Distribution rhs = add(star(derivative(f), g), star(f, derivative(g)));
    CHECK(dist_equal(lhs, rhs, 1e-7));
  }
}

TEST_CASE("the constant 1 is the unity") {
  Rng rng(6003);
  Distribution one = Distribution::from_smooth(SmoothExpr::constant(1.0));
  for (int it = 0; it < 20; ++it) {
    Distribution f = distalg::testing::random_distribution(rng, 2, 3, true);
    CHECK(dist_equal(star(one, f), f, 1e-8));
    CHECK(dist_equal(star(f, one), f, 1e-8));
  }
}

TEST_CASE("star restricted to continuous functions is the pointwise product "
          "and commutes") {
  Rng rng(6004);
  for (int it = 0; it < 30; ++it) {
    Distribution f = distalg::testing::random_continuous(rng);
    Distribution g = distalg::testing::random_continuous(rng);
    Distribution fg = star(f, g);
    CHECK(dist_equal(fg, star(g, f), 1e-7));
    CHECK(fg.delta_free());
    // Pointwise product checked on samples straddling the breakpoints.
    for (double x : {-2.0, -0.7, 0.0, 0.4, 1.3, 2.2}) {
      Scalar expect = f.piece_at(x).eval(x) * g.piece_at(x).eval(x);
      CHECK(std::abs(fg.piece_at(x).eval(x) - expect) < 1e-7);
    }
  }
}

TEST_CASE("star reproduces the Hormander product on disjoint supports") {
  Rng rng(6005);
  int done = 0;
  while (done < 30) {
    Distribution f = distalg::testing::random_distribution(rng, 1, 3, true);
    Distribution g = distalg::testing::random_distribution(rng, 1, 3, true);
    Distribution viaH;
    try {
      viaH = hormander_product(f, g);
    } catch (const OverlappingSingularSupports&) {
      continue;  // redraw until supports are disjoint
    }
    CHECK(dist_equal(star(f, g), viaH, 1e-8));
    ++done;
  }
}

TEST_CASE("non-commutativity witness") {
  Distribution d = parse_distribution("delta(x)");
  Distribution th = parse_distribution("theta(x)");
  CHECK(dist_equal(star(d, th), d));
  CHECK(is_zero(star(th, d)));
  CHECK_FALSE(dist_equal(star(d, th), star(th, d)));
}

TEST_CASE("derivative distributes over star sums") {
  Rng rng(6006);
  for (int it = 0; it < 20; ++it) {
    Distribution f = distalg::testing::random_distribution(rng);
    Distribution g = distalg::testing::random_distribution(rng);
    CHECK(dist_equal(derivative(add(f, g)),
                     add(derivative(f), derivative(g)), 1e-8));
  }
}
