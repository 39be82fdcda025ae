#include "distalg/dist_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "distalg/errors.hpp"

namespace distalg {

struct DistExpr::Node {
  Kind kind;
  Scalar value{0.0, 0.0};
  int exponent = 0;
  double point = 0.0;
  bool reflected = false;
  std::vector<DistExpr> kids;
};

DistExpr DistExpr::constant(Scalar c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = c;
  return DistExpr(std::move(n));
}

DistExpr DistExpr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  return DistExpr(std::move(n));
}

DistExpr DistExpr::unary(Kind kind, DistExpr child) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids.push_back(std::move(child));
  return DistExpr(std::move(n));
}

DistExpr DistExpr::binary(Kind kind, DistExpr a, DistExpr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->kids.push_back(std::move(a));
  n->kids.push_back(std::move(b));
  return DistExpr(std::move(n));
}

DistExpr DistExpr::power(DistExpr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->kids.push_back(std::move(base));
  return DistExpr(std::move(n));
}

DistExpr DistExpr::theta(double point, bool reflected) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Theta;
  n->point = point;
  n->reflected = reflected;
  return DistExpr(std::move(n));
}

DistExpr DistExpr::delta(int order, double point, bool reflected) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Delta;
  n->exponent = order;
  n->point = point;
  n->reflected = reflected;
  return DistExpr(std::move(n));
}

DistExpr::Kind DistExpr::kind() const { return node_->kind; }
Scalar DistExpr::value() const { return node_->value; }
int DistExpr::exponent() const { return node_->exponent; }
double DistExpr::point() const { return node_->point; }
bool DistExpr::reflected() const { return node_->reflected; }
const std::vector<DistExpr>& DistExpr::children() const {
  return node_->kids;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string shift_text(double point, bool reflected) {
  std::string arg = reflected ? "-x" : "x";
  double c = reflected ? point : -point;
  if (c != 0.0) arg += c >= 0.0 ? "+" + fmt_double(c) : fmt_double(c);
  return arg;
}

// Precedence: Add/Sub 0, products 1, Neg 1, Pow 2, atoms 3.
int precedence(const DistExpr& e) {
  using Kind = DistExpr::Kind;
  switch (e.kind()) {
    case Kind::Add:
    case Kind::Sub:
      return 0;
    case Kind::Hormander:
    case Kind::Star:
    case Kind::Neg:
      return 1;
    case Kind::Pow:
      return 2;
    case Kind::Const:
      return (e.value().imag() == 0.0 && e.value().real() < 0.0) ? 1 : 3;
    default:
      return 3;
  }
}

std::string print(const DistExpr& e);

std::string print_wrapped(const DistExpr& e, int min_prec) {
  std::string body = print(e);
  if (precedence(e) < min_prec) return "(" + body + ")";
  return body;
}

std::string print(const DistExpr& e) {
  using Kind = DistExpr::Kind;
  switch (e.kind()) {
    case Kind::Const:
      return format_scalar(e.value());
    case Kind::Var:
      return "x";
    case Kind::Sin:
      return "sin(" + print(e.children()[0]) + ")";
    case Kind::Cos:
      return "cos(" + print(e.children()[0]) + ")";
    case Kind::Exp:
      return "exp(" + print(e.children()[0]) + ")";
    case Kind::Pow:
      return print_wrapped(e.children()[0], 3) + "^" +
             std::to_string(e.exponent());
    case Kind::Neg:
      return "-" + print_wrapped(e.children()[0], 2);
    case Kind::Add:
      return print_wrapped(e.children()[0], 0) + " + " +
             print_wrapped(e.children()[1], 1);
    case Kind::Sub:
      return print_wrapped(e.children()[0], 0) + " - " +
             print_wrapped(e.children()[1], 1);
    case Kind::Hormander:
      return print_wrapped(e.children()[0], 1) + "*" +
             print_wrapped(e.children()[1], 2);
    case Kind::Star:
      return print_wrapped(e.children()[0], 1) + " ** " +
             print_wrapped(e.children()[1], 2);
    case Kind::Derivative:
      return "D[" + print(e.children()[0]) + "]";
    case Kind::Theta:
      return "theta(" + shift_text(e.point(), e.reflected()) + ")";
    case Kind::Delta: {
      std::string head = "delta";
      if (e.exponent() == 1) {
        head += "'";
      } else if (e.exponent() == 2) {
        head += "''";
      } else if (e.exponent() >= 3) {
        head += "^(" + std::to_string(e.exponent()) + ")";
      }
      return head + "(" + shift_text(e.point(), e.reflected()) + ")";
    }
  }
  return {};
}

}  // namespace

std::string DistExpr::str() const { return print(*this); }

// ---------------------------------------------------------------------------
// Lowering

namespace {

/// Extracts the single global smooth expression, or throws.
SmoothExpr as_smooth(const Distribution& d, const char* what) {
  if (!d.breakpoints().empty() || !d.combs().empty()) {
    throw Error(std::string(what) +
                " requires a smooth argument, not a distribution with "
                "singular support");
  }
  return d.piece(0);
}

}  // namespace

Distribution lower(const DistExpr& e) {
  using Kind = DistExpr::Kind;
  switch (e.kind()) {
    case Kind::Const:
      return Distribution::from_smooth(SmoothExpr::constant(e.value()));
    case Kind::Var:
      return Distribution::from_smooth(SmoothExpr::variable());
    case Kind::Sin:
      return Distribution::from_smooth(SmoothExpr::sin(
          as_smooth(lower(e.children()[0]), "sin")));
    case Kind::Cos:
      return Distribution::from_smooth(SmoothExpr::cos(
          as_smooth(lower(e.children()[0]), "cos")));
    case Kind::Exp:
      return Distribution::from_smooth(SmoothExpr::exp(
          as_smooth(lower(e.children()[0]), "exp")));
    case Kind::Pow:
      return Distribution::from_smooth(SmoothExpr::pow(
          as_smooth(lower(e.children()[0]), "integer power"), e.exponent()));
    case Kind::Neg:
      return scale(Scalar{-1.0, 0.0}, lower(e.children()[0]));
    case Kind::Add:
      return add(lower(e.children()[0]), lower(e.children()[1]));
    case Kind::Sub:
      return sub(lower(e.children()[0]), lower(e.children()[1]));
    case Kind::Hormander:
      return hormander_product(lower(e.children()[0]),
                               lower(e.children()[1]));
    case Kind::Star:
      return star(lower(e.children()[0]), lower(e.children()[1]));
    case Kind::Derivative:
      return derivative(lower(e.children()[0]));
    case Kind::Theta:
      return Distribution::heaviside(e.point(), e.reflected());
    case Kind::Delta: {
      // delta^(n)(-(x - a)) = (-1)^n delta^(n)(x - a).
      Scalar coeff{e.reflected() && e.exponent() % 2 == 1 ? -1.0 : 1.0, 0.0};
      return Distribution::delta(e.point(), e.exponent(), coeff);
    }
  }
  return {};
}

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
    Prime,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
  };
  Type type;
  double number = 0.0;
  std::string ident;
  std::size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    current_ = Token{};
    current_.pos = pos_;
    if (pos_ >= text_.size()) {
      current_.type = Token::Type::End;
      return;
    }
    char c = text_[pos_];
    if (c == '/') {
      throw SyntaxError(
          "division is excluded: pieces must stay infinitely smooth", pos_);
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
      case '\'':
        current_.type = Token::Type::Prime;
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
      case '[':
        current_.type = Token::Type::LBracket;
        ++pos_;
        return;
      case ']':
        current_.type = Token::Type::RBracket;
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
        if (pos_ < text_.size() &&
            (text_[pos_] == '+' || text_[pos_] == '-')) {
          ++pos_;
        }
        if (pos_ < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
          }
        } else {
          pos_ = save;
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

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  DistExpr parse() {
    DistExpr e = parse_sum();
    const Token& t = lex_.peek();
    if (t.type != Token::Type::End) {
      throw SyntaxError("unexpected trailing input", t.pos);
    }
    return e;
  }

 private:
  using Kind = DistExpr::Kind;

  DistExpr parse_sum() {
    DistExpr e = parse_product();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Plus) {
        lex_.take();
        e = DistExpr::binary(Kind::Add, std::move(e), parse_product());
      } else if (t.type == Token::Type::Minus) {
        lex_.take();
        e = DistExpr::binary(Kind::Sub, std::move(e), parse_product());
      } else {
        break;
      }
    }
    return e;
  }

  DistExpr parse_product() {
    DistExpr e = parse_unary();
    while (true) {
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Star) {
        lex_.take();
        e = DistExpr::binary(Kind::Hormander, std::move(e), parse_unary());
      } else if (t.type == Token::Type::StarStar) {
        lex_.take();
        e = DistExpr::binary(Kind::Star, std::move(e), parse_unary());
      } else {
        break;
      }
    }
    return e;
  }

  DistExpr parse_unary() {
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      return DistExpr::unary(Kind::Neg, parse_unary());
    }
    return parse_power();
  }

  DistExpr parse_power() {
    DistExpr base = parse_atom();
    while (lex_.peek().type == Token::Type::Caret) {
      Token caret = lex_.take();
      const Token& t = lex_.peek();
      if (t.type == Token::Type::Minus) {
        throw SyntaxError(
            "negative powers are excluded: they break smoothness where the "
            "base vanishes",
            t.pos);
      }
      if (t.type != Token::Type::Number) {
        throw SyntaxError("expected an integer exponent", caret.pos);
      }
      Token num = lex_.take();
      if (num.number != std::floor(num.number) || num.number < 0.0 ||
          num.number > 64.0) {
        throw SyntaxError(
            "exponent must be a non-negative integer (fractional powers are "
            "excluded as non-smooth)",
            num.pos);
      }
      base = DistExpr::power(std::move(base), static_cast<int>(num.number));
    }
    return base;
  }

  DistExpr parse_atom() {
    Token t = lex_.take();
    switch (t.type) {
      case Token::Type::Number:
        return DistExpr::constant(Scalar{t.number, 0.0});
      case Token::Type::LParen: {
        DistExpr e = parse_sum();
        expect(Token::Type::RParen, "expected ')'");
        return e;
      }
      case Token::Type::Ident: {
        if (t.ident == "x") return DistExpr::variable();
        if (t.ident == "i") return DistExpr::constant(Scalar{0.0, 1.0});
        if (t.ident == "sin" || t.ident == "cos" || t.ident == "exp") {
          expect(Token::Type::LParen, "expected '('");
          DistExpr arg = parse_sum();
          expect(Token::Type::RParen, "expected ')'");
          Kind k = t.ident == "sin" ? Kind::Sin
                   : t.ident == "cos" ? Kind::Cos
                                      : Kind::Exp;
          return DistExpr::unary(k, std::move(arg));
        }
        if (t.ident == "theta") {
          auto [point, reflected] = parse_shift_parens();
          return DistExpr::theta(point, reflected);
        }
        if (t.ident == "delta") return parse_delta(t.pos);
        if (t.ident == "D") {
          expect(Token::Type::LBracket, "expected '[' after D");
          DistExpr inner = parse_sum();
          expect(Token::Type::RBracket, "expected ']'");
          return DistExpr::unary(Kind::Derivative, std::move(inner));
        }
        if (t.ident == "sqrt" || t.ident == "log" || t.ident == "abs" ||
            t.ident == "tan") {
          throw SyntaxError("'" + t.ident +
                                "' is excluded: it is not infinitely smooth "
                                "on all of R",
                            t.pos);
        }
        throw SyntaxError("unknown identifier '" + t.ident + "'", t.pos);
      }
      default:
        throw SyntaxError("expected a value", t.pos);
    }
  }

  DistExpr parse_delta(std::size_t pos) {
    int order = 0;
    // delta' / delta'' (up to two primes) or delta^(n).
    while (lex_.peek().type == Token::Type::Prime) {
      lex_.take();
      ++order;
      if (order > 2) {
        throw SyntaxError(
            "use delta^(n)(...) for derivative orders above 2", pos);
      }
    }
    if (order == 0 && lex_.peek().type == Token::Type::Caret) {
      lex_.take();
      expect(Token::Type::LParen, "expected '(' after delta^");
      const Token& t = lex_.peek();
      if (t.type != Token::Type::Number || t.number != std::floor(t.number) ||
          t.number < 0.0 || t.number > 32.0) {
        throw SyntaxError("expected a non-negative integer derivative order",
                          t.pos);
      }
      order = static_cast<int>(lex_.take().number);
      expect(Token::Type::RParen, "expected ')'");
    }
    auto [point, reflected] = parse_shift_parens();
    return DistExpr::delta(order, point, reflected);
  }

  /// '(' ['-'] 'x' (('+'|'-') number)? ')' -> (breakpoint, reflected).
  std::pair<double, bool> parse_shift_parens() {
    expect(Token::Type::LParen, "expected '('");
    bool reflected = false;
    if (lex_.peek().type == Token::Type::Minus) {
      lex_.take();
      reflected = true;
    }
    const Token& tx = lex_.peek();
    if (tx.type != Token::Type::Ident || tx.ident != "x") {
      throw SyntaxError("expected 'x' in the argument shift", tx.pos);
    }
    lex_.take();
    double c = 0.0;
    const Token& t = lex_.peek();
    if (t.type == Token::Type::Plus || t.type == Token::Type::Minus) {
      double sign = t.type == Token::Type::Plus ? 1.0 : -1.0;
      lex_.take();
      const Token& num = lex_.peek();
      if (num.type != Token::Type::Number) {
        throw SyntaxError("expected a number in the argument shift", num.pos);
      }
      c = sign * lex_.take().number;
    }
    expect(Token::Type::RParen, "expected ')'");
    // Argument is (+-x + c); it crosses zero at x = -+c.
    double point = reflected ? c : -c;
    if (point == 0.0) point = 0.0;  // avoid -0.0 breakpoints
    return {point, reflected};
  }

  void expect(Token::Type type, const char* msg) {
    const Token& t = lex_.peek();
    if (t.type != type) throw SyntaxError(msg, t.pos);
    lex_.take();
  }

  Lexer lex_;
};

}  // namespace

DistExpr parse_dist(std::string_view text) {
  Parser parser(text);
  return parser.parse();
}

Distribution parse_distribution(std::string_view text) {
  return lower(parse_dist(text));
}

}  // namespace distalg
