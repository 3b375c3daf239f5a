#include "covals/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>

#include "covals/error.hpp"
#include "covals/greedy.hpp"

namespace covals::dsl {

namespace {

using Kind = Node::Kind;

NodePtr make_leaf(Kind kind, Complex value, std::size_t pos) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->value = value;
  n->position = pos;
  return n;
}

NodePtr make_binary(Kind kind, NodePtr lhs, NodePtr rhs, std::size_t pos) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->position = pos;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    return Expr(root);
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    throw SyntaxError(ErrorCode::SyntaxError, at, "syntax error at position " + std::to_string(at) + ": " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  // Current character with U+2212 folded to '-'; 0 at end of input.
  char peek(std::size_t* width = nullptr) {
    skip_ws();
    if (width) *width = 1;
    if (pos_ >= text_.size()) return '\0';
    if (text_.substr(pos_, 3) == "\xE2\x88\x92") {
      if (width) *width = 3;
      return '-';
    }
    return text_[pos_];
  }

  bool accept(char c) {
    std::size_t w = 1;
    if (peek(&w) != c) return false;
    pos_ += w;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(pos_, std::string("expected '") + c + "' before end of input");
      fail(pos_, std::string("expected '") + c + "'");
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    while (true) {
      const std::size_t at = (peek(), pos_);
      if (accept('+')) {
        lhs = make_binary(Kind::Add, lhs, term(), at);
      } else if (accept('-')) {
        lhs = make_binary(Kind::Sub, lhs, term(), at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      const std::size_t at = (peek(), pos_);
      if (!accept('*')) return lhs;
      lhs = make_binary(Kind::Mul, lhs, factor(), at);
    }
  }

  NodePtr factor() {
    const char c = peek();
    const std::size_t at = pos_;
    if (c == '\0') fail(pos_, "unexpected end of input");
    if (accept('-')) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::Neg;
      n->lhs = factor();
      n->position = at;
      return n;
    }
    NodePtr base;
    if (accept('(')) {
      base = expr();
      expect(')');
    } else {
      base = atom();
    }
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail(start, "expected unsigned integer exponent");
      unsigned e = 0;
      const auto r = std::from_chars(text_.data() + start, text_.data() + pos_, e);
      if (r.ec != std::errc{}) fail(start, "exponent out of range");
      auto n = std::make_shared<Node>();
      n->kind = Kind::Pow;
      n->lhs = base;
      n->exponent = e;
      n->position = at;
      return n;
    }
    return base;
  }

  // Unsigned decimal number with optional fraction and exponent.
  std::optional<double> number() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      return std::nullopt;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t mark = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;
    }
    double v = 0.0;
    const auto r = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (r.ec != std::errc{}) fail(start, "malformed number");
    return v;
  }

  bool at_imaginary_unit() {
    return pos_ < text_.size() && text_[pos_] == 'i' &&
           (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])));
  }

  // real [('+'|'-') real 'i'] | real 'i', with an optional leading sign.
  Complex complex_literal() {
    double sign = 1.0;
    if (accept('-')) sign = -1.0;
    else accept('+');
    skip_ws();
    const std::size_t start = pos_;
    std::optional<double> first = number();
    if (at_imaginary_unit()) {
      ++pos_;
      return {0.0, sign * first.value_or(1.0)};
    }
    if (!first) fail(start, "expected complex literal");
    const double re = sign * *first;
    double im_sign = 0.0;
    if (accept('+')) im_sign = 1.0;
    else if (accept('-')) im_sign = -1.0;
    else return {re, 0.0};
    const std::optional<double> im = number();
    if (!at_imaginary_unit()) fail(pos_, "expected 'i' after imaginary part");
    ++pos_;
    return {re, im_sign * im.value_or(1.0)};
  }

  NodePtr atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (std::optional<double> v = number()) return make_leaf(Kind::Number, *v, at);

    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_) fail(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
    const std::string_view name = text_.substr(pos_, end - pos_);
    Kind kind;
    if (name == "p") kind = Kind::Pedal;
    else if (name == "pinf") kind = Kind::PedalInf;
    else if (name == "r") kind = Kind::Radial;
    else if (name == "pc") kind = Kind::ContraPedal;
    else throw SyntaxError(ErrorCode::UnknownSymbol, at, "unknown symbol '" + std::string(name) + "' at position " + std::to_string(at));
    pos_ = end;

    if (peek() != '(') {
      if (kind == Kind::Pedal) return make_leaf(Kind::OriginPedal, {}, at);
      fail(pos_, "expected '(' after '" + std::string(name) + "'");
    }
    expect('(');
    const Complex z = complex_literal();
    expect(')');
    return make_leaf(kind, z, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Rings used for evaluation.

struct Dual {
  double v = 0.0, d = 0.0;
  Dual() = default;
  Dual(double value, double deriv = 0.0) : v(value), d(deriv) {}
  friend Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator-(Dual a) { return {-a.v, -a.d}; }
};

struct PolyP {
  std::vector<double> c;  // ascending powers of p
  PolyP() = default;
  PolyP(double constant) : c{constant} {}
  explicit PolyP(std::vector<double> coeffs) : c(std::move(coeffs)) {}
  friend PolyP operator+(const PolyP& a, const PolyP& b) {
    std::vector<double> r(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return PolyP(std::move(r));
  }
  friend PolyP operator-(const PolyP& a) {
    PolyP r = a;
    for (double& x : r.c) x = -x;
    return r;
  }
  friend PolyP operator-(const PolyP& a, const PolyP& b) { return a + (-b); }
  friend PolyP operator*(const PolyP& a, const PolyP& b) {
    if (a.c.empty() || b.c.empty()) return PolyP(std::vector<double>{});
    std::vector<double> r(a.c.size() + b.c.size() - 1);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return PolyP(std::move(r));
  }
};

template <class R>
R eval_node(const Node& n, const std::function<R(const Node&)>& leaf) {
  switch (n.kind) {
    case Kind::Add: return eval_node(*n.lhs, leaf) + eval_node(*n.rhs, leaf);
    case Kind::Sub: return eval_node(*n.lhs, leaf) - eval_node(*n.rhs, leaf);
    case Kind::Mul: return eval_node(*n.lhs, leaf) * eval_node(*n.rhs, leaf);
    case Kind::Neg: return -eval_node(*n.lhs, leaf);
    case Kind::Pow: {
      const R base = eval_node(*n.lhs, leaf);
      R out(1.0);
      for (unsigned i = 0; i < n.exponent; ++i) out = out * base;
      return out;
    }
    case Kind::Number: return R(n.value.real());
    default: return leaf(n);
  }
}

[[noreturn]] void point_domain(const Node& n) {
  throw Error(ErrorCode::PointDomainAtomInLineContext,
              std::string(n.kind == Kind::Radial ? "r" : "pc") + "(...) at position " + std::to_string(n.position) +
                  " needs a curve point, not a line");
}

// p(a) - p, the line-independent part of a pedal coordinate, and its theta derivative.
double pole_offset(double theta, Complex a) { return std::cos(theta) * a.imag() - std::sin(theta) * a.real(); }
double pole_offset_dtheta(double theta, Complex a) { return -std::sin(theta) * a.imag() - std::cos(theta) * a.real(); }

bool equal_nodes(const Node* a, const Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Number:
    case Kind::Pedal:
    case Kind::PedalInf:
    case Kind::Radial:
    case Kind::ContraPedal: return a->value == b->value;
    case Kind::OriginPedal: return true;
    case Kind::Pow: return a->exponent == b->exponent && equal_nodes(a->lhs.get(), b->lhs.get());
    case Kind::Neg: return equal_nodes(a->lhs.get(), b->lhs.get());
    default: return equal_nodes(a->lhs.get(), b->lhs.get()) && equal_nodes(a->rhs.get(), b->rhs.get());
  }
}

std::string format_real(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

// Printing precedence: sums 1, products 2, negation 3, powers 4, atoms 5.
int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub: return 1;
    case Kind::Mul: return 2;
    case Kind::Neg: return 3;
    case Kind::Pow: return 4;
    case Kind::Number: return n.value.real() < 0.0 || std::signbit(n.value.real()) ? 3 : 5;
    default: return 5;
  }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print_node(child, out);
    out += ')';
  } else {
    print_node(child, out);
  }
}

std::string format_literal(Complex z);

void print_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: out += format_real(n.value.real()); break;
    case Kind::OriginPedal: out += "p"; break;
    case Kind::Pedal: out += "p(" + format_literal(n.value) + ")"; break;
    case Kind::PedalInf: out += "pinf(" + format_literal(n.value) + ")"; break;
    case Kind::Radial: out += "r(" + format_literal(n.value) + ")"; break;
    case Kind::ContraPedal: out += "pc(" + format_literal(n.value) + ")"; break;
    case Kind::Add:
    case Kind::Sub:
      print_child(*n.lhs, 1, out);
      out += n.kind == Kind::Add ? " + " : " - ";
      print_child(*n.rhs, 2, out);
      break;
    case Kind::Mul:
      print_child(*n.lhs, 2, out);
      out += '*';
      print_child(*n.rhs, 3, out);
      break;
    case Kind::Neg:
      out += '-';
      print_child(*n.lhs, 3, out);
      break;
    case Kind::Pow:
      print_child(*n.lhs, 5, out);
      out += '^' + std::to_string(n.exponent);
      break;
  }
}

std::string format_literal(Complex z) {
  if (z.imag() == 0.0) return format_real(z.real());
  if (z.real() == 0.0) return format_real(z.imag()) + "i";
  std::string s = format_real(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  s += format_real(std::abs(z.imag())) + "i";
  return s;
}

}  // namespace

bool Expr::has_point_domain_atoms() const {
  std::function<bool(const Node*)> walk = [&](const Node* n) {
    if (!n) return false;
    if (n->kind == Kind::Radial || n->kind == Kind::ContraPedal) return true;
    return walk(n->lhs.get()) || walk(n->rhs.get());
  };
  return walk(root_.get());
}

int Expr::degree_in_p() const {
  std::function<int(const Node&)> deg = [&](const Node& n) -> int {
    switch (n.kind) {
      case Kind::Number:
      case Kind::PedalInf: return 0;
      case Kind::OriginPedal:
      case Kind::Pedal:
      case Kind::Radial:
      case Kind::ContraPedal: return 1;
      case Kind::Add:
      case Kind::Sub: return std::max(deg(*n.lhs), deg(*n.rhs));
      case Kind::Mul: return deg(*n.lhs) + deg(*n.rhs);
      case Kind::Neg: return deg(*n.lhs);
      case Kind::Pow: return static_cast<int>(n.exponent) * deg(*n.lhs);
    }
    return 0;
  };
  return deg(*root_);
}

bool operator==(const Expr& a, const Expr& b) { return equal_nodes(a.root_.get(), b.root_.get()); }

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Expr& e) {
  std::string out;
  print_node(e.root(), out);
  return out;
}

double eval_on_line(const Expr& e, const TangentLine& line) {
  return eval_node<double>(e.root(), [&](const Node& n) -> double {
    switch (n.kind) {
      case Kind::OriginPedal: return line.p;
      case Kind::Pedal: return pedal_of(line, Pole::finite(n.value));
      case Kind::PedalInf: return pedal_of(line, Pole::infinite(n.value));
      default: point_domain(n);
    }
  });
}

std::vector<double> polynomial_in_p(const Expr& e, double theta) {
  const PolyP poly = eval_node<PolyP>(e.root(), [&](const Node& n) -> PolyP {
    switch (n.kind) {
      case Kind::OriginPedal: return PolyP(std::vector<double>{0.0, 1.0});
      case Kind::Pedal: return PolyP(std::vector<double>{pole_offset(theta, n.value), 1.0});
      case Kind::PedalInf: return PolyP(pole_offset(theta, n.value));
      default: point_domain(n);
    }
  });
  return poly.c;
}

Gradient gradient_on_line(const Expr& e, const TangentLine& line) {
  const double theta = line.theta;
  const Dual by_theta = eval_node<Dual>(e.root(), [&](const Node& n) -> Dual {
    switch (n.kind) {
      case Kind::OriginPedal: return {line.p, 0.0};
      case Kind::Pedal: return {line.p + pole_offset(theta, n.value), pole_offset_dtheta(theta, n.value)};
      case Kind::PedalInf: return {pole_offset(theta, n.value), pole_offset_dtheta(theta, n.value)};
      default: point_domain(n);
    }
  });
  const Dual by_p = eval_node<Dual>(e.root(), [&](const Node& n) -> Dual {
    switch (n.kind) {
      case Kind::OriginPedal: return {line.p, 1.0};
      case Kind::Pedal: return {line.p + pole_offset(theta, n.value), 1.0};
      case Kind::PedalInf: return {pole_offset(theta, n.value), 0.0};
      default: point_domain(n);
    }
  });
  return {by_theta.v, by_theta.d, by_p.d};
}

std::string expansion_to_text(const CovalExpansion& expansion) {
  std::string out;
  for (const auto& level : expansion.levels) {
    const double c = level.gamma * std::pow(0.25, level.order);
    if (c == 0.0) continue;
    std::string term;
    const bool unit = std::abs(c) == 1.0 && !level.poles.empty();
    if (!unit) term = format_real(std::abs(c));
    for (const auto& pole : level.poles) {
      if (!term.empty()) term += '*';
      term += (pole.is_finite() ? "p(" : "pinf(") + format_literal(pole.value) + ")";
    }
    if (out.empty()) {
      out = (c < 0.0 ? "-" : "") + term;
    } else {
      out += (c < 0.0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

Branch parse_branch(std::string_view name) {
  if (name == "all") return Branch::All;
  if (name == "max") return Branch::Max;
  if (name == "min") return Branch::Min;
  throw Error(ErrorCode::InputError, "unknown branch '" + std::string(name) + "' (expected all, max or min)");
}

}  // namespace covals::dsl
