// distalg: command-line front end for the piecewise-smooth distribution
// algebra and the confined Schrodinger operators built on it.
//
// Exit codes: 0 success, 1 domain/math errors (and failed checks),
// 2 usage/syntax errors.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "distalg/dist_parser.hpp"
#include "distalg/errors.hpp"
#include "distalg/pairing.hpp"
#include "distalg/schrodinger.hpp"

namespace {

using namespace distalg;

struct Options {
  bool json = false;
  double tol = 1e-9;
  double window = 40.0;
};

void print_dist(const Distribution& d, const Options& opt) {
  std::cout << (opt.json ? to_json(d) : format_dist(d)) << "\n";
}

void print_scalar(Scalar v, const Options& opt) {
  if (opt.json) {
    std::cout << "{\"re\": " << v.real() << ", \"im\": " << v.imag() << "}\n";
  } else {
    std::cout << format_scalar(v) << "\n";
  }
}

/// Worst residual of F against zero: largest comb coefficient plus the
/// largest piece magnitude on sampled windows.
double residual_norm(const Distribution& f) {
  double worst = 0.0;
  for (const auto& comb : f.combs()) {
    for (const auto& c : comb.coeffs) worst = std::max(worst, std::abs(c));
  }
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k <= bps.size(); ++k) {
    double lo = k == 0 ? (bps.empty() ? -10.0 : bps.front() - 10.0)
                       : bps[k - 1];
    double hi = k == bps.size() ? (bps.empty() ? 10.0 : bps.back() + 10.0)
                                : bps[k];
    for (int j = 0; j < 17; ++j) {
      double t = std::cos(M_PI * (2.0 * j + 1.0) / 34.0);
      double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t;
      worst = std::max(worst, std::abs(f.piece(k).eval(x)));
    }
  }
  return worst;
}

TestFunction parse_test_function(const std::string& spec) {
  double c = 0.0;
  double r = 0.0;
  if (std::sscanf(spec.c_str(), "bump(%lf,%lf)", &c, &r) == 2 ||
      std::sscanf(spec.c_str(), "bump(%lf, %lf)", &c, &r) == 2) {
    return TestFunction::bump(c, r);
  }
  throw SyntaxError("test function must be of the form bump(center,radius)",
                    0);
}

Sign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return Sign::Plus;
  if (s == "-" || s == "minus") return Sign::Minus;
  throw SyntaxError("sign must be one of: + - plus minus", 0);
}

OperatorExpr named_operator(const std::string& name) {
  auto op = operator_by_name(name);
  if (!op) {
    throw SyntaxError("unknown operator '" + name +
                          "' (expected HC, HS, HD, Pplus, Pminus, dx, "
                          "deltaplus(n) or deltaminus(n))",
                      0);
  }
  return *op;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Symbolic algebra of piecewise-smooth distributions and the globally "
      "defined confined Schrodinger operators"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_flag("--json", opt.json, "emit JSON instead of the text form");
  app.add_option("--tol", opt.tol, "comparison tolerance")
      ->capture_default_str();
  app.add_option("--window", opt.window, "L2 truncation window")
      ->capture_default_str();

  std::string lhs, rhs, psi_text, phi_text, op_name = "HC", test_spec,
                                            sign_text = "+";
  double energy = 0.0;

  auto* cmd_star = app.add_subcommand("star", "star product F ** G");
  cmd_star->add_option("F", lhs)->required();
  cmd_star->add_option("G", rhs)->required();

  auto* cmd_product = app.add_subcommand(
      "product", "Hormander product F * G (disjoint singular supports)");
  cmd_product->add_option("F", lhs)->required();
  cmd_product->add_option("G", rhs)->required();

  auto* cmd_derive =
      app.add_subcommand("derive", "distributional derivative D[F]");
  cmd_derive->add_option("F", lhs)->required();

  auto* cmd_normalize =
      app.add_subcommand("normalize", "parse and print the normalized form");
  cmd_normalize->add_option("F", lhs)->required();

  auto* cmd_pair =
      app.add_subcommand("pair", "functional action <F, t> on a bump");
  cmd_pair->add_option("F", lhs)->required();
  cmd_pair->add_option("--test", test_spec, "bump(center,radius)")
      ->required();

  auto* cmd_eigen = app.add_subcommand(
      "check-eigen", "verify H psi = E psi under normalized equality");
  cmd_eigen->add_option("--op", op_name, "operator name")
      ->capture_default_str();
  cmd_eigen->add_option("--psi", psi_text)->required();
  cmd_eigen->add_option("--energy", energy)->required();

  auto* cmd_comm = app.add_subcommand(
      "commutator", "[H_D, P(sign)] psi on the Dirichlet domain");
  cmd_comm->add_option("--sign", sign_text, "+ or -")->capture_default_str();
  cmd_comm->add_option("--psi", psi_text)->required();

  auto* cmd_defect = app.add_subcommand(
      "symmetry-defect", "<H phi, psi> - <phi, H psi> over the L2 window");
  cmd_defect->add_option("--op", op_name)->capture_default_str();
  cmd_defect->add_option("--phi", phi_text)->required();
  cmd_defect->add_option("--psi", psi_text)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors map to exit code 2
  }

  try {
    if (cmd_star->parsed()) {
      print_dist(star(parse_distribution(lhs), parse_distribution(rhs)), opt);
    } else if (cmd_product->parsed()) {
      print_dist(
          hormander_product(parse_distribution(lhs), parse_distribution(rhs)),
          opt);
    } else if (cmd_derive->parsed()) {
      print_dist(derivative(parse_distribution(lhs)), opt);
    } else if (cmd_normalize->parsed()) {
      print_dist(parse_distribution(lhs), opt);
    } else if (cmd_pair->parsed()) {
      print_scalar(
          pair(parse_distribution(lhs), parse_test_function(test_spec)), opt);
    } else if (cmd_eigen->parsed()) {
      OperatorExpr h = named_operator(op_name);
      WaveFunction psi(parse_distribution(psi_text));
      Distribution residual =
          sub(h.apply(psi.dist()),
              scale(Scalar{energy, 0.0}, psi.dist()));
      double norm = residual_norm(residual);
      bool pass = norm <= opt.tol;
      std::cout << (pass ? "PASS" : "FAIL") << " residual "
                << (norm == 0.0 ? "0" : format_scalar(Scalar{norm, 0.0}))
                << "\n";
      return pass ? 0 : 1;
    } else if (cmd_comm->parsed()) {
      WaveFunction psi(parse_distribution(psi_text));
      print_dist(commutator_hd_projector(parse_sign(sign_text), psi), opt);
    } else if (cmd_defect->parsed()) {
      OperatorExpr h = named_operator(op_name);
      WaveFunction phi(parse_distribution(phi_text));
      WaveFunction psi(parse_distribution(psi_text));
      print_scalar(symmetry_defect(h, phi, psi, opt.window), opt);
    }
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
