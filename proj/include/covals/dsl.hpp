#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "covals/pedal.hpp"

namespace covals {

struct CovalExpansion;

namespace dsl {

/// Node of a coval expression tree. Children are shared and immutable.
struct Node {
  enum class Kind {
    Number,       // value.real()
    OriginPedal,  // p
    Pedal,        // p(value)
    PedalInf,     // pinf(value)
    Radial,       // r(value), point domain
    ContraPedal,  // pc(value), point domain
    Add,
    Sub,
    Mul,
    Neg,
    Pow,          // lhs ^ exponent
  };

  Kind kind = Kind::Number;
  Complex value{};
  unsigned exponent = 0;
  std::shared_ptr<const Node> lhs, rhs;
  std::size_t position = 0;  // byte offset of the node in the source text
};

using NodePtr = std::shared_ptr<const Node>;

class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& root_ptr() const noexcept { return root_; }

  /// True when some r(...) or pc(...) atom occurs.
  bool has_point_domain_atoms() const;
  /// Upper bound on the degree in p.
  int degree_in_p() const;

  /// Structural equality, ignoring source positions.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

/// Recursive-descent parse. SyntaxError / UnknownSymbol carry the byte offset.
/// Accepts U+2212 as a minus sign.
Expr parse(std::string_view text);

/// Canonical text: minimal parentheses, numbers printed with 17 significant
/// digits. parse(print(e)) == e.
std::string print(const Expr& e);

/// Evaluates on a line through pedal coordinates. PointDomainAtomInLineContext
/// for r/pc atoms.
double eval_on_line(const Expr& e, const TangentLine& line);

/// Real coefficients (ascending) of the expression as a polynomial in p at a
/// fixed angle.
std::vector<double> polynomial_in_p(const Expr& e, double theta);

/// Partial derivatives of the expression with respect to theta and p.
struct Gradient {
  double value = 0.0;
  double d_theta = 0.0;
  double d_p = 0.0;
};
Gradient gradient_on_line(const Expr& e, const TangentLine& line);

/// Coval text sum_k gamma_k 4^{-k} prod p(pole) of an expansion, equal to
/// det p(A) on every line.
std::string expansion_to_text(const CovalExpansion& expansion);

enum class Branch { All, Max, Min };

struct EnvelopePoint {
  double theta = 0.0;
  double p = 0.0;
  double dp_dtheta = 0.0;
  Complex point{};
};

struct EnvelopeBranch {
  int id = 0;
  std::vector<EnvelopePoint> points;
  bool closed = false;
};

struct Envelope {
  std::vector<EnvelopeBranch> branches;
  std::vector<double> degenerate_thetas;  // angles where the expression does not depend on p
  std::vector<double> singular_thetas;    // angles where a root has dF/dp = 0
};

/// Envelope of the line family defined by the expression: per angle, the real
/// roots in p, continued across angles by nearest matching and mapped through
/// envelope_point with dp/dtheta = -F_theta / F_p. theta_samples >= 64.
Envelope envelope(const Expr& e, int theta_samples, Branch branch = Branch::All);

Branch parse_branch(std::string_view name);

}  // namespace dsl
}  // namespace covals
