#include "distalg/distribution.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "distalg/errors.hpp"

namespace distalg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Window used when comparing pieces across a breakpoint.
constexpr double kMergeWindow = 1.0;

/// Window length for sampling pieces on unbounded intervals.
constexpr double kUnboundedWindow = 10.0;

bool points_match(double a, double b, double tol = kEpsZero) {
  return std::abs(a - b) <= tol;
}

std::vector<Scalar> chopped(std::vector<Scalar> coeffs, double eps = kEpsZero) {
  for (auto& c : coeffs) c = chop(c, eps);
  while (!coeffs.empty() && coeffs.back() == Scalar{0.0, 0.0}) {
    coeffs.pop_back();
  }
  return coeffs;
}

/// Sorted union of two breakpoint sets, coalescing points within kEpsZero.
std::vector<double> merge_points(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  std::vector<double> dedup;
  for (double w : out) {
    if (dedup.empty() || !points_match(dedup.back(), w)) dedup.push_back(w);
  }
  return dedup;
}

/// A representative interior point of the open interval (lo, hi).
double interval_probe(double lo, double hi) {
  if (std::isinf(lo) && std::isinf(hi)) return 0.0;
  if (std::isinf(lo)) return hi - 1.0;
  if (std::isinf(hi)) return lo + 1.0;
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction / normalization

Distribution Distribution::from_smooth(SmoothExpr e) {
  PiecewiseSmooth ps;
  ps.pieces = {std::move(e)};
  return make(std::move(ps), {});
}

Distribution Distribution::heaviside(double a, bool reflected) {
  PiecewiseSmooth ps;
  ps.breakpoints = {a};
  if (reflected) {
    ps.pieces = {SmoothExpr::constant(1.0), SmoothExpr::constant(0.0)};
  } else {
    ps.pieces = {SmoothExpr::constant(0.0), SmoothExpr::constant(1.0)};
  }
  return make(std::move(ps), {});
}

Distribution Distribution::delta(double point, int order, Scalar coeff) {
  DeltaComb comb;
  comb.point = point;
  comb.coeffs.assign(static_cast<std::size_t>(order) + 1, Scalar{0.0, 0.0});
  comb.coeffs.back() = coeff;
  return make(PiecewiseSmooth{}, {std::move(comb)});
}

Distribution Distribution::make(PiecewiseSmooth smooth,
                                std::vector<DeltaComb> combs) {
  assert(smooth.pieces.size() == smooth.breakpoints.size() + 1);
  assert(std::is_sorted(smooth.breakpoints.begin(), smooth.breakpoints.end()));

  Distribution out;
  out.smooth_.breakpoints = std::move(smooth.breakpoints);
  out.smooth_.pieces.clear();
  for (auto& p : smooth.pieces) out.smooth_.pieces.push_back(p.normalized());

  // Coalesce breakpoints that collide within kEpsZero (can arise from grid
  // merging); the sliver piece between them is dropped.
  for (std::size_t i = 1; i < out.smooth_.breakpoints.size();) {
    if (points_match(out.smooth_.breakpoints[i - 1],
                     out.smooth_.breakpoints[i])) {
      out.smooth_.breakpoints.erase(out.smooth_.breakpoints.begin() +
                                    static_cast<std::ptrdiff_t>(i));
      out.smooth_.pieces.erase(out.smooth_.pieces.begin() +
                               static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }

  // Normalize combs: chop, strip, merge same-point combs, sort.
  std::sort(combs.begin(), combs.end(),
            [](const DeltaComb& a, const DeltaComb& b) {
              return a.point < b.point;
            });
  for (auto& comb : combs) {
    comb.coeffs = chopped(std::move(comb.coeffs));
    if (comb.coeffs.empty()) continue;
    if (!out.combs_.empty() && points_match(out.combs_.back().point,
                                            comb.point)) {
      auto& dst = out.combs_.back().coeffs;
      if (dst.size() < comb.coeffs.size()) dst.resize(comb.coeffs.size());
      for (std::size_t j = 0; j < comb.coeffs.size(); ++j) {
        dst[j] += comb.coeffs[j];
      }
      dst = chopped(std::move(dst));
    } else {
      out.combs_.push_back(std::move(comb));
    }
  }
  std::erase_if(out.combs_, [](const DeltaComb& c) { return c.coeffs.empty(); });

  // Every comb point must appear among the breakpoints; insert a (trivial)
  // breakpoint duplicating the covering piece where missing.
  for (const auto& comb : out.combs_) {
    auto& bps = out.smooth_.breakpoints;
    auto it = std::lower_bound(bps.begin(), bps.end(), comb.point - kEpsZero);
    if (it != bps.end() && points_match(*it, comb.point)) continue;
    std::size_t idx = static_cast<std::size_t>(it - bps.begin());
    bps.insert(it, comb.point);
    out.smooth_.pieces.insert(
        out.smooth_.pieces.begin() + static_cast<std::ptrdiff_t>(idx),
        out.smooth_.pieces[idx]);
  }

  // Prune removable breakpoints: no comb and adjacent pieces agree (to
  // sampling order) on a window around the point.
  for (std::size_t i = 0; i < out.smooth_.breakpoints.size();) {
    double w = out.smooth_.breakpoints[i];
    if (out.comb_at(w) == nullptr &&
        expr_equal(out.smooth_.pieces[i], out.smooth_.pieces[i + 1],
                   w - kMergeWindow, w + kMergeWindow)) {
      out.smooth_.breakpoints.erase(out.smooth_.breakpoints.begin() +
                                    static_cast<std::ptrdiff_t>(i));
      out.smooth_.pieces.erase(out.smooth_.pieces.begin() +
                               static_cast<std::ptrdiff_t>(i + 1));
    } else {
      ++i;
    }
  }
  return out;
}

const SmoothExpr& Distribution::piece_at(double x) const {
  const auto& bps = smooth_.breakpoints;
  auto it = std::upper_bound(bps.begin(), bps.end(), x);
  return smooth_.pieces[static_cast<std::size_t>(it - bps.begin())];
}

const DeltaComb* Distribution::comb_at(double point, double tol) const {
  for (const auto& comb : combs_) {
    if (points_match(comb.point, point, tol)) return &comb;
  }
  return nullptr;
}

namespace {

/// Index of the interval immediately left of w (treating w as a grid point
/// when it matches a breakpoint within kEpsZero).
std::size_t left_interval_index(const Distribution& f, double w) {
  const auto& bps = f.breakpoints();
  std::size_t idx = 0;
  while (idx < bps.size() && bps[idx] < w - kEpsZero) ++idx;
  return idx;
}

const SmoothExpr& piece_left_of(const Distribution& f, double w) {
  return f.piece(left_interval_index(f, w));
}

const SmoothExpr& piece_right_of(const Distribution& f, double w) {
  const auto& bps = f.breakpoints();
  std::size_t idx = left_interval_index(f, w);
  if (idx < bps.size() && points_match(bps[idx], w)) ++idx;
  return f.piece(idx);
}

}  // namespace

// ---------------------------------------------------------------------------
// Linear structure

Distribution add(const Distribution& f, const Distribution& g) {
  std::vector<double> grid = merge_points(f.breakpoints(), g.breakpoints());
  PiecewiseSmooth ps;
  ps.breakpoints = grid;
  ps.pieces.clear();
  for (std::size_t k = 0; k <= grid.size(); ++k) {
    double lo = k == 0 ? -kInf : grid[k - 1];
    double hi = k == grid.size() ? kInf : grid[k];
    double probe = interval_probe(lo, hi);
    ps.pieces.push_back(
        SmoothExpr::add(f.piece_at(probe), g.piece_at(probe)));
  }
  std::vector<DeltaComb> combs = f.combs();
  combs.insert(combs.end(), g.combs().begin(), g.combs().end());
  return Distribution::make(std::move(ps), std::move(combs));
}

Distribution scale(Scalar c, const Distribution& f) {
  PiecewiseSmooth ps;
  ps.breakpoints = f.breakpoints();
  ps.pieces.clear();
  for (const auto& p : f.pieces()) {
    ps.pieces.push_back(SmoothExpr::mul(SmoothExpr::constant(c), p));
  }
  std::vector<DeltaComb> combs = f.combs();
  for (auto& comb : combs) {
    for (auto& coef : comb.coeffs) coef *= c;
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

Distribution sub(const Distribution& f, const Distribution& g) {
  return add(f, scale(Scalar{-1.0, 0.0}, g));
}

// ---------------------------------------------------------------------------
// Derivative and translation

Distribution derivative(const Distribution& f) {
  PiecewiseSmooth ps;
  ps.breakpoints = f.breakpoints();
  ps.pieces.clear();
  for (const auto& p : f.pieces()) ps.pieces.push_back(p.diff());

  std::vector<DeltaComb> combs;
  // Jump deltas at every breakpoint.
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    double w = f.breakpoints()[i];
    Scalar jump = chop(f.piece(i + 1).eval(w) - f.piece(i).eval(w));
    if (jump != Scalar{0.0, 0.0}) {
      combs.push_back(DeltaComb{w, {jump}});
    }
  }
  // Existing comb coefficients shift up one derivative order.
  for (const auto& comb : f.combs()) {
    DeltaComb shifted;
    shifted.point = comb.point;
    shifted.coeffs.reserve(comb.coeffs.size() + 1);
    shifted.coeffs.push_back(Scalar{0.0, 0.0});
    shifted.coeffs.insert(shifted.coeffs.end(), comb.coeffs.begin(),
                          comb.coeffs.end());
    combs.push_back(std::move(shifted));
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

Distribution translate(const Distribution& f, double eps) {
  PiecewiseSmooth ps;
  for (double w : f.breakpoints()) ps.breakpoints.push_back(w - eps);
  ps.pieces.clear();
  for (const auto& p : f.pieces()) ps.pieces.push_back(p.shifted(eps));
  std::vector<DeltaComb> combs = f.combs();
  for (auto& comb : combs) comb.point -= eps;
  return Distribution::make(std::move(ps), std::move(combs));
}

// ---------------------------------------------------------------------------
// Products

DeltaComb smooth_times_comb(const SmoothExpr& g, const DeltaComb& comb) {
  DeltaComb out;
  out.point = comb.point;
  out.coeffs.assign(comb.coeffs.size(), Scalar{0.0, 0.0});
  std::vector<Scalar> taylor = taylor_data(g, comb.point, comb.order());
  for (int n = 0; n <= comb.order(); ++n) {
    Scalar cn = comb.coeffs[static_cast<std::size_t>(n)];
    if (cn == Scalar{0.0, 0.0}) continue;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      out.coeffs[static_cast<std::size_t>(n - k)] +=
          cn * sign * binom * taylor[static_cast<std::size_t>(k)];
      binom = binom * (n - k) / (k + 1);
    }
  }
  out.coeffs = chopped(std::move(out.coeffs));
  return out;
}

namespace {

PiecewiseSmooth piecewise_product(const Distribution& f, const Distribution& g,
                                  const std::vector<double>& grid) {
  PiecewiseSmooth ps;
  ps.breakpoints = grid;
  ps.pieces.clear();
  for (std::size_t k = 0; k <= grid.size(); ++k) {
    double lo = k == 0 ? -kInf : grid[k - 1];
    double hi = k == grid.size() ? kInf : grid[k];
    double probe = interval_probe(lo, hi);
    ps.pieces.push_back(
        SmoothExpr::mul(f.piece_at(probe), g.piece_at(probe)));
  }
  return ps;
}

}  // namespace

Distribution hormander_product(const Distribution& f, const Distribution& g) {
  std::vector<double> vf = sing_supp(f);
  std::vector<double> vg = sing_supp(g);
  for (double wf : vf) {
    for (double wg : vg) {
      if (points_match(wf, wg)) {
        throw OverlappingSingularSupports(
            "Hormander product needs disjoint singular supports (both are "
            "singular near x = " +
            std::to_string(wf) + "); use the star product instead");
      }
    }
  }
  std::vector<double> grid = merge_points(f.breakpoints(), g.breakpoints());
  PiecewiseSmooth ps = piecewise_product(f, g, grid);

  std::vector<DeltaComb> combs;
  // At w in V_F the factor G is locally smooth: multiply by its covering
  // piece. Symmetrically for V_G.
  for (const auto& comb : f.combs()) {
    combs.push_back(smooth_times_comb(g.piece_at(comb.point), comb));
  }
  for (const auto& comb : g.combs()) {
    combs.push_back(smooth_times_comb(f.piece_at(comb.point), comb));
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

Distribution star(const Distribution& f, const Distribution& g) {
  std::vector<double> grid = merge_points(f.breakpoints(), g.breakpoints());
  PiecewiseSmooth ps = piecewise_product(f, g, grid);

  std::vector<DeltaComb> combs;
  // Comb of F at x_k meets the piece of G on (x_k, x_{k+1}) (right
  // extension); comb of G meets the piece of F on (x_{k-1}, x_k) (left
  // extension). Only one-sided Taylor data of those pieces at x_k enters,
  // so no global extension is ever materialized.
  for (const auto& comb : f.combs()) {
    combs.push_back(smooth_times_comb(piece_right_of(g, comb.point), comb));
  }
  for (const auto& comb : g.combs()) {
    combs.push_back(smooth_times_comb(piece_left_of(f, comb.point), comb));
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

// ---------------------------------------------------------------------------
// Restriction, support, equality

Distribution restrict_to(const Distribution& f, double lo, double hi) {
  assert(lo < hi);
  PiecewiseSmooth ps;
  ps.pieces.clear();
  if (std::isfinite(lo)) {
    ps.breakpoints.push_back(lo);
    ps.pieces.push_back(SmoothExpr::constant(0.0));
  }
  for (std::size_t k = 0; k <= f.breakpoints().size(); ++k) {
    double a = k == 0 ? -kInf : f.breakpoints()[k - 1];
    double b = k == f.breakpoints().size() ? kInf : f.breakpoints()[k];
    // Intersect (a, b) with (lo, hi).
    double a2 = std::max(a, lo);
    double b2 = std::min(b, hi);
    if (a2 >= b2 - kEpsZero) continue;
    if (!ps.breakpoints.empty() && points_match(ps.breakpoints.back(), a2)) {
      ps.pieces.push_back(f.piece(k));
    } else if (std::isfinite(a2)) {
      ps.breakpoints.push_back(a2);
      ps.pieces.push_back(f.piece(k));
    } else {
      ps.pieces.push_back(f.piece(k));
    }
  }
  if (std::isfinite(hi)) {
    ps.breakpoints.push_back(hi);
    ps.pieces.push_back(SmoothExpr::constant(0.0));
  }
  if (ps.pieces.size() != ps.breakpoints.size() + 1) {
    ps.pieces.push_back(SmoothExpr::constant(0.0));
  }
  std::vector<DeltaComb> combs;
  for (const auto& comb : f.combs()) {
    if (comb.point > lo + kEpsZero && comb.point < hi - kEpsZero) {
      combs.push_back(comb);
    }
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

std::vector<double> sing_supp(const Distribution& f) {
  // The representation is normalized on construction, so every surviving
  // breakpoint is singular (piece mismatch or comb).
  return f.breakpoints();
}

bool is_zero(const Distribution& f, double tol) {
  for (const auto& comb : f.combs()) {
    for (const auto& c : comb.coeffs) {
      if (std::abs(c) > tol) return false;
    }
  }
  const SmoothExpr zero = SmoothExpr::constant(0.0);
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k <= bps.size(); ++k) {
    double lo = k == 0 ? -kInf : bps[k - 1];
    double hi = k == bps.size() ? kInf : bps[k];
    double wlo = std::isinf(lo) ? hi - kUnboundedWindow : lo;
    double whi = std::isinf(hi) ? lo + kUnboundedWindow : hi;
    if (std::isinf(lo) && std::isinf(hi)) {
      wlo = -kUnboundedWindow;
      whi = kUnboundedWindow;
    }
    if (!expr_equal(f.piece(k), zero, wlo, whi, tol)) return false;
  }
  return true;
}

bool dist_equal(const Distribution& f, const Distribution& g, double tol) {
  return is_zero(sub(f, g), tol);
}

// ---------------------------------------------------------------------------
// JSON

std::string to_json(const Distribution& f) {
  nlohmann::json j;
  j["breakpoints"] = f.breakpoints();
  std::vector<std::string> pieces;
  for (const auto& p : f.pieces()) pieces.push_back(p.str());
  j["pieces"] = pieces;
  nlohmann::json deltas = nlohmann::json::array();
  for (const auto& comb : f.combs()) {
    nlohmann::json entry;
    entry["point"] = comb.point;
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : comb.coeffs) {
      coeffs.push_back({c.real(), c.imag()});
    }
    entry["coeffs"] = coeffs;
    deltas.push_back(entry);
  }
  j["deltas"] = deltas;
  return j.dump();
}

Distribution from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SyntaxError(std::string("invalid JSON: ") + e.what(), 0);
  }
  PiecewiseSmooth ps;
  ps.breakpoints = j.at("breakpoints").get<std::vector<double>>();
  ps.pieces.clear();
  for (const auto& s : j.at("pieces")) {
    ps.pieces.push_back(parse_smooth(s.get<std::string>()));
  }
  if (ps.pieces.size() != ps.breakpoints.size() + 1) {
    throw SyntaxError("pieces count must equal breakpoints count + 1", 0);
  }
  std::vector<DeltaComb> combs;
  for (const auto& entry : j.at("deltas")) {
    DeltaComb comb;
    comb.point = entry.at("point").get<double>();
    for (const auto& c : entry.at("coeffs")) {
      comb.coeffs.push_back(Scalar{c.at(0).get<double>(),
                                   c.at(1).get<double>()});
    }
    combs.push_back(std::move(comb));
  }
  return Distribution::make(std::move(ps), std::move(combs));
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string fmt_point(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// "theta(x-a)" or, reflected, "theta(-x+a)".
std::string theta_text(double a, bool reflected) {
  std::string arg = reflected ? "-x" : "x";
  if (a != 0.0) {
    double shift = reflected ? a : -a;
    arg += shift >= 0.0 ? "+" + fmt_point(shift) : fmt_point(shift);
  }
  return "theta(" + arg + ")";
}

std::string delta_text(int order, double point) {
  std::string head = "delta";
  if (order == 1) {
    head += "'";
  } else if (order == 2) {
    head += "''";
  } else if (order >= 3) {
    head += "^(" + std::to_string(order) + ")";
  }
  std::string arg = "x";
  if (point != 0.0) {
    arg += point > 0.0 ? "-" + fmt_point(point) : "+" + fmt_point(-point);
  }
  return head + "(" + arg + ")";
}

struct Term {
  bool negative = false;
  std::string text;
};

}  // namespace

std::string format_dist(const Distribution& f) {
  std::vector<Term> terms;
  const auto& bps = f.breakpoints();
  for (std::size_t k = 0; k <= bps.size(); ++k) {
    const SmoothExpr& p = f.piece(k);
    if (p.is_zero()) continue;
    std::vector<std::string> factors;
    if (k > 0) factors.push_back(theta_text(bps[k - 1], false));
    if (k < bps.size()) factors.push_back(theta_text(bps[k], true));
    if (factors.empty()) {
      factors.push_back(p.str());
    } else if (!p.is_one()) {
      factors.push_back("(" + p.str() + ")");
    }
    std::string text = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) text += "*" + factors[i];
    terms.push_back(Term{false, std::move(text)});
  }
  for (const auto& comb : f.combs()) {
    for (int j = 0; j <= comb.order(); ++j) {
      Scalar c = comb.coeffs[static_cast<std::size_t>(j)];
      if (c == Scalar{0.0, 0.0}) continue;
      Term term;
      if (c.imag() == 0.0 && c.real() < 0.0) {
        term.negative = true;
        c = -c;
      }
      std::string base = delta_text(j, comb.point);
      term.text = (c == Scalar{1.0, 0.0}) ? base
                                          : format_scalar(c) + "*" + base;
      terms.push_back(std::move(term));
    }
  }
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      if (terms[i].negative) out += "-";
    } else {
      out += terms[i].negative ? " - " : " + ";
    }
    out += terms[i].text;
  }
  return out;
}

}  // namespace distalg
