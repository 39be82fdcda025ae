#include "distalg/smooth_expr.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "distalg/errors.hpp"

namespace distalg {

struct SmoothExpr::Node {
  Kind kind;
  Scalar value{0.0, 0.0};
  int exponent = 0;
  std::vector<SmoothExpr> kids;
};

namespace {

SmoothExpr make_node(SmoothExpr::Kind kind, Scalar value, int exponent,
                     std::vector<SmoothExpr> kids);

}  // namespace

SmoothExpr::SmoothExpr() { *this = constant(Scalar{0.0, 0.0}); }

SmoothExpr SmoothExpr::constant(Scalar c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = c;
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::add(std::vector<SmoothExpr> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->kids = std::move(terms);
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::add(SmoothExpr a, SmoothExpr b) {
  return add(std::vector<SmoothExpr>{std::move(a), std::move(b)});
}

SmoothExpr SmoothExpr::sub(SmoothExpr a, SmoothExpr b) {
  return add(std::move(a), neg(std::move(b)));
}

SmoothExpr SmoothExpr::mul(std::vector<SmoothExpr> factors) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->kids = std::move(factors);
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::mul(SmoothExpr a, SmoothExpr b) {
  return mul(std::vector<SmoothExpr>{std::move(a), std::move(b)});
}

SmoothExpr SmoothExpr::pow(SmoothExpr base, int exponent) {
  assert(exponent >= 0);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->kids.push_back(std::move(base));
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::sin(SmoothExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sin;
  n->kids.push_back(std::move(e));
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::cos(SmoothExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cos;
  n->kids.push_back(std::move(e));
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::exp(SmoothExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exp;
  n->kids.push_back(std::move(e));
  return SmoothExpr(std::move(n));
}

SmoothExpr SmoothExpr::neg(SmoothExpr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->kids.push_back(std::move(e));
  return SmoothExpr(std::move(n));
}

SmoothExpr::Kind SmoothExpr::kind() const { return node_->kind; }
Scalar SmoothExpr::value() const { return node_->value; }
int SmoothExpr::exponent() const { return node_->exponent; }
const std::vector<SmoothExpr>& SmoothExpr::children() const {
  return node_->kids;
}

bool SmoothExpr::is_zero() const {
  return is_constant() && value() == Scalar{0.0, 0.0};
}

bool SmoothExpr::is_one() const {
  return is_constant() && value() == Scalar{1.0, 0.0};
}

namespace {

Scalar ipow(Scalar base, int n) {
  Scalar acc{1.0, 0.0};
  for (int i = 0; i < n; ++i) acc *= base;
  return acc;
}

Scalar eval_rec(const SmoothExpr& e, double x) {
  using Kind = SmoothExpr::Kind;
  switch (e.kind()) {
    case Kind::Constant:
      return e.value();
    case Kind::Variable:
      return Scalar{x, 0.0};
    case Kind::Add: {
      Scalar s{0.0, 0.0};
      for (const auto& k : e.children()) s += eval_rec(k, x);
      return s;
    }
    case Kind::Mul: {
      Scalar p{1.0, 0.0};
      for (const auto& k : e.children()) p *= eval_rec(k, x);
      return p;
    }
    case Kind::Pow:
      return ipow(eval_rec(e.children()[0], x), e.exponent());
    case Kind::Sin:
      return std::sin(eval_rec(e.children()[0], x));
    case Kind::Cos:
      return std::cos(eval_rec(e.children()[0], x));
    case Kind::Exp:
      return std::exp(eval_rec(e.children()[0], x));
    case Kind::Neg:
      return -eval_rec(e.children()[0], x);
  }
  return {};
}

}  // namespace

Scalar SmoothExpr::eval(double x) const {
  Scalar v = eval_rec(*this, x);
  if (!scalar_finite(v)) {
    throw EvalOverflow("evaluation overflowed at x = " + std::to_string(x));
  }
  return v;
}

SmoothExpr SmoothExpr::diff() const {
  using Kind = SmoothExpr::Kind;
  switch (kind()) {
    case Kind::Constant:
      return constant(0.0);
    case Kind::Variable:
      return constant(1.0);
    case Kind::Add: {
      std::vector<SmoothExpr> terms;
      terms.reserve(children().size());
      for (const auto& k : children()) terms.push_back(k.diff());
      return add(std::move(terms));
    }
    case Kind::Mul: {
      // Product rule over an n-ary product.
      std::vector<SmoothExpr> terms;
      for (std::size_t i = 0; i < children().size(); ++i) {
        std::vector<SmoothExpr> factors;
        for (std::size_t j = 0; j < children().size(); ++j) {
          factors.push_back(i == j ? children()[j].diff() : children()[j]);
        }
        terms.push_back(mul(std::move(factors)));
      }
      return add(std::move(terms));
    }
    case Kind::Pow: {
      int n = exponent();
      if (n == 0) return constant(0.0);
      const SmoothExpr& base = children()[0];
      return mul({constant(static_cast<double>(n)), pow(base, n - 1),
                  base.diff()});
    }
    case Kind::Sin:
      return mul(cos(children()[0]), children()[0].diff());
    case Kind::Cos:
      return neg(mul(sin(children()[0]), children()[0].diff()));
    case Kind::Exp:
      return mul(exp(children()[0]), children()[0].diff());
    case Kind::Neg:
      return neg(children()[0].diff());
  }
  return {};
}

SmoothExpr SmoothExpr::shifted(double c) const {
  using Kind = SmoothExpr::Kind;
  if (c == 0.0) return *this;
  switch (kind()) {
    case Kind::Constant:
      return *this;
    case Kind::Variable:
      return add(variable(), constant(c));
    default: {
      std::vector<SmoothExpr> kids;
      kids.reserve(children().size());
      for (const auto& k : children()) kids.push_back(k.shifted(c));
      return make_node(kind(), value(), exponent(), std::move(kids));
    }
  }
}

namespace {

SmoothExpr make_node(SmoothExpr::Kind kind, Scalar value, int exponent,
                     std::vector<SmoothExpr> kids) {
  using Kind = SmoothExpr::Kind;
  switch (kind) {
    case Kind::Constant:
      return SmoothExpr::constant(value);
    case Kind::Variable:
      return SmoothExpr::variable();
    case Kind::Add:
      return SmoothExpr::add(std::move(kids));
    case Kind::Mul:
      return SmoothExpr::mul(std::move(kids));
    case Kind::Pow:
      return SmoothExpr::pow(std::move(kids[0]), exponent);
    case Kind::Sin:
      return SmoothExpr::sin(std::move(kids[0]));
    case Kind::Cos:
      return SmoothExpr::cos(std::move(kids[0]));
    case Kind::Exp:
      return SmoothExpr::exp(std::move(kids[0]));
    case Kind::Neg:
      return SmoothExpr::neg(std::move(kids[0]));
  }
  return {};
}

int kind_rank(SmoothExpr::Kind k) { return static_cast<int>(k); }

}  // namespace

int SmoothExpr::compare(const SmoothExpr& a, const SmoothExpr& b) {
  using Kind = SmoothExpr::Kind;
  int ra = kind_rank(a.kind());
  int rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Constant: {
      Scalar va = a.value();
      Scalar vb = b.value();
      if (va.real() != vb.real()) return va.real() < vb.real() ? -1 : 1;
      if (va.imag() != vb.imag()) return va.imag() < vb.imag() ? -1 : 1;
      return 0;
    }
    case Kind::Variable:
      return 0;
    default: {
      const auto& ka = a.children();
      const auto& kb = b.children();
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      for (std::size_t i = 0; i < ka.size(); ++i) {
        int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
      }
      if (a.kind() == Kind::Pow && a.exponent() != b.exponent()) {
        return a.exponent() < b.exponent() ? -1 : 1;
      }
      return 0;
    }
  }
}

bool operator==(const SmoothExpr& a, const SmoothExpr& b) {
  return SmoothExpr::compare(a, b) == 0;
}

SmoothExpr SmoothExpr::normalized() const {
  using Kind = SmoothExpr::Kind;
  switch (kind()) {
    case Kind::Constant:
      return constant(chop(value()));
    case Kind::Variable:
      return *this;
    case Kind::Neg:
      return mul(constant(-1.0), children()[0]).normalized();
    case Kind::Add: {
      std::vector<SmoothExpr> flat;
      Scalar c{0.0, 0.0};
      for (const auto& k : children()) {
        SmoothExpr nk = k.normalized();
        if (nk.kind() == Kind::Add) {
          for (const auto& g : nk.children()) {
            if (g.is_constant()) {
              c += g.value();
            } else {
              flat.push_back(g);
            }
          }
        } else if (nk.is_constant()) {
          c += nk.value();
        } else {
          flat.push_back(nk);
        }
      }
      c = chop(c);
      std::stable_sort(flat.begin(), flat.end(),
                       [](const SmoothExpr& x, const SmoothExpr& y) {
                         return compare(x, y) < 0;
                       });
      std::vector<SmoothExpr> terms;
      if (c != Scalar{0.0, 0.0}) terms.push_back(constant(c));
      terms.insert(terms.end(), flat.begin(), flat.end());
      if (terms.empty()) return constant(0.0);
      if (terms.size() == 1) return terms[0];
      return add(std::move(terms));
    }
    case Kind::Mul: {
      std::vector<SmoothExpr> flat;
      Scalar c{1.0, 0.0};
      for (const auto& k : children()) {
        SmoothExpr nk = k.normalized();
        if (nk.kind() == Kind::Mul) {
          for (const auto& g : nk.children()) {
            if (g.is_constant()) {
              c *= g.value();
            } else {
              flat.push_back(g);
            }
          }
        } else if (nk.is_constant()) {
          c *= nk.value();
        } else {
          flat.push_back(nk);
        }
      }
      c = chop(c);
      if (c == Scalar{0.0, 0.0}) return constant(0.0);
      std::stable_sort(flat.begin(), flat.end(),
                       [](const SmoothExpr& x, const SmoothExpr& y) {
                         return compare(x, y) < 0;
                       });
      std::vector<SmoothExpr> factors;
      if (c != Scalar{1.0, 0.0}) factors.push_back(constant(c));
      factors.insert(factors.end(), flat.begin(), flat.end());
      if (factors.empty()) return constant(1.0);
      if (factors.size() == 1) return factors[0];
      return mul(std::move(factors));
    }
    case Kind::Pow: {
      SmoothExpr base = children()[0].normalized();
      int n = exponent();
      if (n == 0) return constant(1.0);
      if (n == 1) return base;
      if (base.is_constant()) return constant(chop(ipow(base.value(), n)));
      if (base.kind() == Kind::Pow) {
        return pow(base.children()[0], base.exponent() * n);
      }
      return pow(std::move(base), n);
    }
    case Kind::Sin: {
      SmoothExpr arg = children()[0].normalized();
      if (arg.is_constant()) return constant(chop(std::sin(arg.value())));
      return sin(std::move(arg));
    }
    case Kind::Cos: {
      SmoothExpr arg = children()[0].normalized();
      if (arg.is_constant()) return constant(chop(std::cos(arg.value())));
      return cos(std::move(arg));
    }
    case Kind::Exp: {
      SmoothExpr arg = children()[0].normalized();
      if (arg.is_constant()) return constant(chop(std::exp(arg.value())));
      return exp(std::move(arg));
    }
  }
  return {};
}

namespace {

// Truncated Taylor coefficients c_k = f^(k)(x0)/k!, propagated through the
// tree with the standard jet recurrences. Linear in the tree size per
// coefficient, unlike repeated symbolic differentiation which grows
// factorially on products.
using TJet = std::vector<Scalar>;

TJet jet_eval(const SmoothExpr& e, double x0, std::size_t size) {
  switch (e.kind()) {
    case SmoothExpr::Kind::Constant: {
      TJet out(size, Scalar{0.0, 0.0});
      out[0] = e.value();
      return out;
    }
    case SmoothExpr::Kind::Variable: {
      TJet out(size, Scalar{0.0, 0.0});
      out[0] = Scalar{x0, 0.0};
      if (size > 1) out[1] = Scalar{1.0, 0.0};
      return out;
    }
    case SmoothExpr::Kind::Add: {
      TJet out(size, Scalar{0.0, 0.0});
      for (const SmoothExpr& c : e.children()) {
        TJet t = jet_eval(c, x0, size);
        for (std::size_t k = 0; k < size; ++k) out[k] += t[k];
      }
      return out;
    }
    case SmoothExpr::Kind::Mul: {
      TJet out(size, Scalar{0.0, 0.0});
      out[0] = Scalar{1.0, 0.0};
      for (const SmoothExpr& c : e.children()) {
        TJet t = jet_eval(c, x0, size);
        TJet next(size, Scalar{0.0, 0.0});
        for (std::size_t k = 0; k < size; ++k) {
          for (std::size_t j = 0; j <= k; ++j) next[k] += out[j] * t[k - j];
        }
        out = std::move(next);
      }
      return out;
    }
    case SmoothExpr::Kind::Pow: {
      TJet base = jet_eval(e.children()[0], x0, size);
      TJet out(size, Scalar{0.0, 0.0});
      out[0] = Scalar{1.0, 0.0};
      for (int n = e.exponent(); n > 0; --n) {
        TJet next(size, Scalar{0.0, 0.0});
        for (std::size_t k = 0; k < size; ++k) {
          for (std::size_t j = 0; j <= k; ++j) next[k] += out[j] * base[k - j];
        }
        out = std::move(next);
      }
      return out;
    }
    case SmoothExpr::Kind::Neg: {
      TJet out = jet_eval(e.children()[0], x0, size);
      for (Scalar& c : out) c = -c;
      return out;
    }
    case SmoothExpr::Kind::Exp: {
      TJet a = jet_eval(e.children()[0], x0, size);
      TJet out(size, Scalar{0.0, 0.0});
      out[0] = std::exp(a[0]);
      for (std::size_t k = 1; k < size; ++k) {
        Scalar s{0.0, 0.0};
        for (std::size_t j = 1; j <= k; ++j) {
          s += static_cast<double>(j) * a[j] * out[k - j];
        }
        out[k] = s / static_cast<double>(k);
      }
      return out;
    }
    case SmoothExpr::Kind::Sin:
    case SmoothExpr::Kind::Cos: {
      TJet a = jet_eval(e.children()[0], x0, size);
      TJet s(size, Scalar{0.0, 0.0});
      TJet c(size, Scalar{0.0, 0.0});
      s[0] = std::sin(a[0]);
      c[0] = std::cos(a[0]);
      for (std::size_t k = 1; k < size; ++k) {
        Scalar ds{0.0, 0.0};
        Scalar dc{0.0, 0.0};
        for (std::size_t j = 1; j <= k; ++j) {
          ds += static_cast<double>(j) * a[j] * c[k - j];
          dc += static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = ds / static_cast<double>(k);
        c[k] = -dc / static_cast<double>(k);
      }
      return e.kind() == SmoothExpr::Kind::Sin ? s : c;
    }
  }
  return TJet(size, Scalar{0.0, 0.0});
}

}  // namespace

std::vector<Scalar> taylor_data(const SmoothExpr& e, double x0, int order) {
  std::size_t size = static_cast<std::size_t>(order) + 1;
  TJet jet = jet_eval(e, x0, size);
  std::vector<Scalar> out(size);
  double fact = 1.0;
  for (std::size_t k = 0; k < size; ++k) {
    if (k > 0) fact *= static_cast<double>(k);
    out[k] = jet[k] * fact;
    if (!scalar_finite(out[k])) {
      throw EvalOverflow("derivative evaluation overflowed at x = " +
                         std::to_string(x0));
    }
  }
  return out;
}

bool expr_equal(const SmoothExpr& e1, const SmoothExpr& e2, double lo,
                double hi, double tol) {
  assert(lo < hi);
  constexpr int kNodes = 17;
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < kNodes; ++j) {
    double t = std::cos(M_PI * (2.0 * j + 1.0) / (2.0 * kNodes));
    double x = mid + half * t;
    if (std::abs(e1.eval(x) - e2.eval(x)) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string format_scalar(Scalar c) {
  if (c.imag() == 0.0) return fmt_double(c.real());
  std::string s = "(" + fmt_double(c.real());
  s += c.imag() >= 0.0 ? "+" : "-";
  double im = std::abs(c.imag());
  if (im == 1.0) {
    s += "i)";
  } else {
    s += fmt_double(im) + "*i)";
  }
  return s;
}

namespace {

// Precedence levels: Add 0, Mul 1, Neg 1, Pow 2, atoms 3.
int precedence(const SmoothExpr& e) {
  using Kind = SmoothExpr::Kind;
  switch (e.kind()) {
    case Kind::Add:
      return 0;
    case Kind::Mul:
    case Kind::Neg:
      return 1;
    case Kind::Pow:
      return 2;
    case Kind::Constant:
      return (e.value().imag() == 0.0 && e.value().real() < 0.0) ? 1 : 3;
    default:
      return 3;
  }
}

std::string print(const SmoothExpr& e, int parent_prec);

std::string print_wrapped(const SmoothExpr& e, int parent_prec) {
  std::string body = print(e, parent_prec);
  if (precedence(e) < parent_prec) return "(" + body + ")";
  return body;
}

// If `e` is a negative real constant or a product led by one, returns the
// negated expression so Add can print "a - b".
std::optional<SmoothExpr> split_negation(const SmoothExpr& e) {
  using Kind = SmoothExpr::Kind;
  if (e.kind() == Kind::Neg) return e.children()[0];
  if (e.is_constant() && e.value().imag() == 0.0 && e.value().real() < 0.0) {
    return SmoothExpr::constant(-e.value().real());
  }
  if (e.kind() == Kind::Mul && !e.children().empty()) {
    const SmoothExpr& lead = e.children()[0];
    if (lead.is_constant() && lead.value().imag() == 0.0 &&
        lead.value().real() < 0.0) {
      std::vector<SmoothExpr> factors(e.children().begin() + 1,
                                      e.children().end());
      if (lead.value().real() != -1.0) {
        factors.insert(factors.begin(),
                       SmoothExpr::constant(-lead.value().real()));
      }
      if (factors.empty()) return SmoothExpr::constant(1.0);
      if (factors.size() == 1) return factors[0];
      return SmoothExpr::mul(std::move(factors));
    }
  }
  return std::nullopt;
}

std::string print(const SmoothExpr& e, int /*parent_prec*/) {
  using Kind = SmoothExpr::Kind;
  switch (e.kind()) {
    case Kind::Constant:
      return format_scalar(e.value());
    case Kind::Variable:
      return "x";
    case Kind::Add: {
      std::string s;
      bool first = true;
      for (const auto& term : e.children()) {
        if (first) {
          s += print_wrapped(term, 0);
          first = false;
          continue;
        }
        if (auto flipped = split_negation(term)) {
          s += " - " + print_wrapped(*flipped, 1);
        } else {
          s += " + " + print_wrapped(term, 1);
        }
      }
      return s;
    }
    case Kind::Mul: {
      std::string s;
      bool first = true;
      for (const auto& f : e.children()) {
        if (!first) s += "*";
        s += print_wrapped(f, first ? 1 : 2);
        first = false;
      }
      return s;
    }
    case Kind::Pow:
      return print_wrapped(e.children()[0], 3) + "^" +
             std::to_string(e.exponent());
    case Kind::Sin:
      return "sin(" + print(e.children()[0], 0) + ")";
    case Kind::Cos:
      return "cos(" + print(e.children()[0], 0) + ")";
    case Kind::Exp:
      return "exp(" + print(e.children()[0], 0) + ")";
    case Kind::Neg:
      return "-" + print_wrapped(e.children()[0], 2);
  }
  return {};
}

}  // namespace

std::string SmoothExpr::str() const { return print(*this, 0); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Type {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    StarStar,
    Caret,
    LParen,
    RParen,
    End,
  };
  Type type;
  double number = 0.0;
  std::string ident;
  std::size_t pos = 0;
};

class SmoothLexer {
 public:
  explicit SmoothLexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_]))) {
      ++pos_;
    }
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = text_[pos_];
    if (c == '/') {
      throw SyntaxError(
          "division is excluded: expressions must stay infinitely smooth on "
          "all of R",
          pos_);
    }
    switch (c) {
      case '+':
        current_.type = Token::Type::Plus;
        ++pos_;
        return;
      case '-':
        current_.type = Token::Type::Minus;
        ++pos_;
        return;
      case '*':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
          current_.type = Token::Type::StarStar;
          pos_ += 2;
        } else {
          current_.type = Token::Type::Star;
          ++pos_;
        }
        return;
      case '^':
        current_.type = Token::Type::Caret;
        ++pos_;
        return;
      case '(':
        current_.type = Token::Type::LParen;
        ++pos_;
        return;
      case ')':
        current_.type = Token::Type::RParen;
        ++pos_;
        return;
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.')) {
        ++pos_;
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
          ++pos_;
        }
        if (pos_ < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
          }
        } else {
          pos_ = save;  // 'e' belongs to an identifier like exp
        }
      }
      std::string num(text_.substr(start, pos_ - start));
      char* end = nullptr;
      double v = std::strtod(num.c_str(), &end);
      if (end != num.c_str() + num.size()) {
        throw SyntaxError("malformed number '" + num + "'", start);
      }
      current_.type = Token::Type::Number;
      current_.number = v;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      current_.type = Token::Type::Ident;
      current_.ident = std::string(text_.substr(start, pos_ - start));
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class SmoothParser {
 public:
  explicit SmoothParser(std::string_view text) : lex_(text) {}

  SmoothExpr parse() {
    SmoothExpr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End) {
      if (t.type == Token::Type::StarStar) {
        throw SyntaxError(
            "'**' (star product) is not part of a smooth expression", t.pos);
      }
      throw SyntaxError("unexpected trailing input", t.pos);
    }
    return e;
  }

 private:
  SmoothExpr parse_sum() {
    SmoothExpr e = parse_product();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Plus) {
        lex_.take();
        e = SmoothExpr::add(std::move(e), parse_product());
      } else if (t.type == Token::Type::Minus) {
        lex_.take();
        e = SmoothExpr::sub(std::move(e), parse_product());
      } else {
        break;
      }
    }
    return e;
  }

  SmoothExpr parse_product() {
    SmoothExpr e = parse_unary();
    while (lex_.peek().type == Token::Type::Star) {
      lex_.take();
      e = SmoothExpr::mul(std::move(e), parse_unary());
    }
    return e;
  }

  SmoothExpr parse_unary() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      return SmoothExpr::neg(parse_unary());
    }
    return parse_power();
  }

  SmoothExpr parse_power() {
    SmoothExpr base = parse_atom();
    while (lex_.peek().type == Token::Type::Caret) {
      lex_.take();
      base = SmoothExpr::pow(std::move(base), parse_exponent());
    }
    return base;
  }

  int parse_exponent() {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::Minus) {
      throw SyntaxError(
          "negative powers are excluded: they break smoothness where the base "
          "vanishes",
          t.pos);
    }
    if (t.type != Token::Type::Number) {
      throw SyntaxError("expected an integer exponent", t.pos);
    }
    Token num = lex_.take();
    double v = num.number;
    if (v != std::floor(v) || v < 0.0 || v > 64.0) {
      throw SyntaxError(
          "exponent must be a non-negative integer (fractional powers are "
          "excluded as non-smooth)",
          num.pos);
    }
    return static_cast<int>(v);
  }

  SmoothExpr parse_atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number:
        return SmoothExpr::constant(t.number);
      case Token::Type::LParen: {
        SmoothExpr e = parse_sum();
        expect_rparen();
        return e;
      }
      case Token::Type::Ident: {
        if (t.ident == "x") return SmoothExpr::variable();
        if (t.ident == "i") return SmoothExpr::constant(Scalar{0.0, 1.0});
        if (t.ident == "sin" || t.ident == "cos" || t.ident == "exp") {
          expect_lparen();
          SmoothExpr arg = parse_sum();
          expect_rparen();
          if (t.ident == "sin") return SmoothExpr::sin(std::move(arg));
          if (t.ident == "cos") return SmoothExpr::cos(std::move(arg));
          return SmoothExpr::exp(std::move(arg));
        }
        if (t.ident == "sqrt" || t.ident == "log" || t.ident == "abs" ||
            t.ident == "tan") {
          throw SyntaxError("'" + t.ident +
                                "' is excluded: it is not infinitely smooth "
                                "on all of R",
                            t.pos);
        }
        if (t.ident == "theta" || t.ident == "delta") {
          throw SyntaxError("'" + t.ident +
                                "' is a distribution, not a smooth expression",
                            t.pos);
        }
        throw SyntaxError("unknown identifier '" + t.ident + "'", t.pos);
      }
      default:
        throw SyntaxError("expected a value", t.pos);
    }
  }

  void expect_lparen() {
    const Token& t = lex_.peek();
    if (t.type != Token::Type::LParen) {
      throw SyntaxError("expected '('", t.pos);
    }
    lex_.take();
  }

  void expect_rparen() {
    const Token& t = lex_.peek();
    if (t.type != Token::Type::RParen) {
      throw SyntaxError("expected ')'", t.pos);
    }
    lex_.take();
  }

  SmoothLexer lex_;
};

}  // namespace

SmoothExpr parse_smooth(std::string_view text) {
  SmoothParser parser(text);
  return parser.parse().normalized();
}

}  // namespace distalg
