#include "distalg/test_function.hpp"

#include <cmath>
#include <vector>

#include "distalg/errors.hpp"

namespace distalg {

namespace {

/// Truncated Taylor series (jet) at a point: coefficient k holds
/// f^(k)/k!. Supports the ring operations plus reciprocal and exp, which is
/// all the bump needs.
class Jet {
 public:
  Jet(std::size_t size, double constant) : a_(size, 0.0) { a_[0] = constant; }

  static Jet variable(std::size_t size, double x0) {
    Jet j(size, x0);
    if (size > 1) j.a_[1] = 1.0;
    return j;
  }

  double coeff(std::size_t k) const { return a_[k]; }
  std::size_t size() const { return a_.size(); }

  friend Jet operator+(const Jet& x, const Jet& y) {
    Jet out(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) out.a_[k] = x.a_[k] + y.a_[k];
    return out;
  }

  friend Jet operator-(double c, const Jet& y) {
    Jet out(y.size(), 0.0);
    out.a_[0] = c - y.a_[0];
    for (std::size_t k = 1; k < y.size(); ++k) out.a_[k] = -y.a_[k];
    return out;
  }

  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet out(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 0; j <= k; ++j) s += x.a_[j] * y.a_[k - j];
      out.a_[k] = s;
    }
    return out;
  }

  friend Jet operator*(double c, const Jet& y) {
    Jet out(y.size(), 0.0);
    for (std::size_t k = 0; k < y.size(); ++k) out.a_[k] = c * y.a_[k];
    return out;
  }

  /// 1/x; requires a nonzero constant term.
  Jet reciprocal() const {
    Jet out(size(), 1.0 / a_[0]);
    for (std::size_t k = 1; k < size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) s += a_[j] * out.a_[k - j];
      out.a_[k] = -s / a_[0];
    }
    return out;
  }

  /// exp(x) via the recurrence e_k = (1/k) sum_{j>=1} j x_j e_{k-j}.
  Jet exp() const {
    Jet out(size(), std::exp(a_[0]));
    for (std::size_t k = 1; k < size(); ++k) {
      double s = 0.0;
      for (std::size_t j = 1; j <= k; ++j) {
        s += static_cast<double>(j) * a_[j] * out.a_[k - j];
      }
      out.a_[k] = s / static_cast<double>(k);
    }
    return out;
  }

 private:
  std::vector<double> a_;
};

}  // namespace

struct TestFunction::Impl {
  virtual ~Impl() = default;
  virtual Scalar derivative(double x, int order) const = 0;
};

namespace {

struct BumpImpl final : TestFunction::Impl {
  double center;
  double radius;

  BumpImpl(double c, double r) : center(c), radius(r) {}

  Scalar derivative(double x, int order) const override {
    double u0 = (x - center) / radius;
    // Outside (and at the edge of) the support every derivative vanishes.
    // The edge margin keeps 1/(1-u^2) out of the overflow range; the true
    // value there is below 1e-300 anyway.
    if (std::abs(u0) >= 1.0 - 1e-8) return Scalar{0.0, 0.0};
    std::size_t size = static_cast<std::size_t>(order) + 1;
    Jet xj = Jet::variable(size, x);
    Jet u = (1.0 / radius) * (xj + Jet(size, -center));
    Jet w = 1.0 - u * u;
    Jet s = -1.0 * w.reciprocal();
    Jet val = s.exp();
    double fact = 1.0;
    for (int k = 1; k <= order; ++k) fact *= k;
    return Scalar{val.coeff(static_cast<std::size_t>(order)) * fact, 0.0};
  }
};

struct ExprImpl final : TestFunction::Impl {
  SmoothExpr expr;

  explicit ExprImpl(SmoothExpr e) : expr(e.normalized()) {}

  Scalar derivative(double x, int order) const override {
    if (order == 0) return expr.eval(x);
    return taylor_data(expr, x, order).back();
  }
};

}  // namespace

TestFunction TestFunction::bump(double center, double radius) {
  if (radius <= 0.0) {
    throw Error("bump radius must be positive");
  }
  return TestFunction(std::make_shared<BumpImpl>(center, radius),
                      center - radius, center + radius);
}

TestFunction TestFunction::from_expr(SmoothExpr e, double lo, double hi,
                                     int check_order) {
  if (!(lo < hi)) {
    throw Error("test function support must be a non-degenerate interval");
  }
  auto impl = std::make_shared<ExprImpl>(std::move(e));
  for (int k = 0; k <= check_order; ++k) {
    for (double edge : {lo, hi}) {
      if (std::abs(impl->derivative(edge, k)) > kEpsZero) {
        throw DomainViolation(
            "test function does not vanish (with derivatives up to order " +
            std::to_string(check_order) + ") at the support boundary");
      }
    }
  }
  return TestFunction(std::move(impl), lo, hi);
}

Scalar TestFunction::derivative(double x, int order) const {
  if (x <= lo_ || x >= hi_) return Scalar{0.0, 0.0};
  return impl_->derivative(x, order);
}

}  // namespace distalg
