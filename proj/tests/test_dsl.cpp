#include <gtest/gtest.h>

#include <random>

#include "covals/boundary.hpp"
#include "covals/dsl.hpp"
#include "covals/error.hpp"
#include "covals/greedy.hpp"
#include "covals/matrix.hpp"
#include "support.hpp"

using namespace covals;
using namespace covals::dsl;
using covals::testing::oracle_pedal;

namespace {

std::size_t syntax_position(std::string_view text) {
  try {
    parse(text);
  } catch (const SyntaxError& e) {
    return e.position();
  }
  return std::string_view::npos;
}

ErrorCode error_code(std::string_view text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::vector<Complex> all_points(const Envelope& env) {
  std::vector<Complex> pts;
  for (const auto& b : env.branches)
    for (const auto& p : b.points) pts.push_back(p.point);
  return pts;
}

// Normalized discriminant b^2 - 4ac of the least-squares conic through the
// points: smallest eigenvector of the 6x6 scatter matrix.
double conic_discriminant(const std::vector<Complex>& pts) {
  CMatrix scatter(6);
  for (const auto& z : pts) {
    const double x = z.real(), y = z.imag();
    const double row[6] = {x * x, x * y, y * y, x, y, 1.0};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) scatter(i, j) += row[i] * row[j];
  }
  const HermitianEigen eig = hermitian_eig(scatter);
  const CVector& v = eig.vectors.front();
  const double a = v[0].real(), b = v[1].real(), c = v[2].real();
  return (b * b - 4.0 * a * c) / (a * a + b * b + c * c);
}

}  // namespace

TEST(Parse, Examples) {
  const Expr e = parse("p(1)*p(-1) - 2.25");
  EXPECT_EQ(e.root().kind, Node::Kind::Sub);
  EXPECT_EQ(e.root().lhs->kind, Node::Kind::Mul);
  EXPECT_EQ(e.root().rhs->kind, Node::Kind::Number);
  EXPECT_EQ(e.root().rhs->value, Complex(2.25));

  const Expr a0 = parse("4*p(1+1i)*p(5-1i)*p(-1+2i) - 16*p(0.3125+0.875i)");
  EXPECT_EQ(a0.degree_in_p(), 3);
  EXPECT_FALSE(a0.has_point_domain_atoms());
}

TEST(Parse, ComplexLiterals) {
  EXPECT_EQ(parse("p(2i)").root().value, Complex(0, 2));
  EXPECT_EQ(parse("p(-1.5-0.5i)").root().value, Complex(-1.5, -0.5));
  EXPECT_EQ(parse("p( 3 + 4i )").root().value, Complex(3, 4));
  EXPECT_EQ(parse("pinf(1e-1+2E1i)").root().value, Complex(0.1, 20));
  EXPECT_EQ(parse("pinf(1)").root().kind, Node::Kind::PedalInf);
  EXPECT_EQ(parse("p").root().kind, Node::Kind::OriginPedal);
}

TEST(Parse, UnicodeMinus) {
  EXPECT_EQ(parse("4*p(1)^3 − 27*p"), parse("4*p(1)^3 - 27*p"));
}

TEST(Parse, Errors) {
  EXPECT_EQ(syntax_position("p(1)*"), 5u);
  EXPECT_EQ(error_code("p(1)*"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code("q(1)"), ErrorCode::UnknownSymbol);
  EXPECT_EQ(syntax_position("q(1)"), 0u);
  EXPECT_EQ(error_code("p(1"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code("p^-1"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code("p(1) p(2)"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code(""), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code("p/2"), ErrorCode::SyntaxError);
  EXPECT_EQ(error_code("p(1/3)"), ErrorCode::SyntaxError);
}

TEST(Parse, PointDomainFlag) {
  EXPECT_TRUE(parse("r(1)^2 + pc(0)").has_point_domain_atoms());
  EXPECT_FALSE(parse("p(1)^2 + pinf(0)").has_point_domain_atoms());
}

TEST(Print, RoundTrip) {
  for (std::string_view text : {"p(1)*p(-1) - 2.25", "4*p(1+1i)*p(5-1i)*p(-1+2i) - 16*p(0.3125+0.875i)",
                                "-(p - 1)^2", "(p(1) + p(2))*(p(3) - p(4))", "p - (p(1) - p(2))", "--p",
                                "(-p)^3", "-p^3", "0.1 + 1e-300*pinf(0.5i)", "r(1)^2 - pc(2i)*pc(-2i)",
                                "((p))", "1 - 2 - 3", "1 - (2 - 3)"}) {
    const Expr e = parse(text);
    const std::string printed = print(e);
    EXPECT_EQ(parse(printed), e) << text << " -> " << printed;
    EXPECT_EQ(print(parse(printed)), printed);
  }
  EXPECT_EQ(print(parse("(p(1)) * ((p(-1))) - 2.25")), "p(1)*p(-1) - 2.25");
  EXPECT_EQ(print(parse("1 - (2 - 3)")), "1 - (2 - 3)");
}

TEST(Print, RandomNumbersRoundTripExactly) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const Complex z{u(rng), u(rng)};
    const Expr direct(std::make_shared<const Node>(Node{Node::Kind::Pedal, z, 0, nullptr, nullptr, 0}));
    EXPECT_EQ(parse(print(direct)), direct);
  }
}

TEST(EvalOnLine, Examples) {
  EXPECT_DOUBLE_EQ(eval_on_line(parse("p"), TangentLine(1.2, 0.7)), 0.7);
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const TangentLine line(u(rng), u(rng));
    EXPECT_DOUBLE_EQ(eval_on_line(parse("p(0)-p"), line), 0.0);
    const double expected = oracle_pedal(line.theta, line.p, 1.0) * oracle_pedal(line.theta, line.p, -1.0) - 2.25;
    EXPECT_NEAR(eval_on_line(parse("p(1)*p(-1) - 2.25"), line), expected, 1e-12);
    EXPECT_NEAR(eval_on_line(parse("pinf(2i)^2"), line), std::pow(oracle_pedal(line.theta, 0.0, Complex(0, 2)), 2), 1e-12);
  }
  try {
    eval_on_line(parse("r(1) + p"), TangentLine(0.0, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointDomainAtomInLineContext);
  }
}

TEST(EvalOnLine, UpperTriangularCovalVanishesOnBoundary) {
  const CMatrix a0{{{1, 1}, {2, 1}, 1}, {0, {5, -1}, {3, 1}}, {0, 0, {-1, 2}}};
  const Expr e = parse("4*p(1+1i)*p(5-1i)*p(-1+2i) - 16*p(0.3125+0.875i)");
  const BoundaryTrace t = trace_boundary(a0, 720);
  for (const auto& s : t.samples) EXPECT_LE(std::abs(eval_on_line(e, TangentLine(s.theta, s.p))), 1e-7 * t.scale);
}

TEST(PolynomialInP, MatchesEvaluation) {
  const Expr e = parse("4*p(1)^3 - 27*p + pinf(1i)*p(2)");
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const double theta = u(rng);
    const std::vector<double> c = polynomial_in_p(e, theta);
    EXPECT_LE(c.size(), 4u);
    for (double p : {-1.0, 0.3, 2.0}) {
      double v = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) v = v * p + c[k];
      EXPECT_NEAR(v, eval_on_line(e, TangentLine(theta, p)), 1e-11);
    }
  }
}

TEST(Gradient, MatchesFiniteDifferences) {
  const Expr e = parse("p(1+2i)^2*p(-1) - 3*pinf(0.5)*p");
  const TangentLine line(0.9, 0.4);
  const Gradient g = gradient_on_line(e, line);
  const double h = 1e-6;
  EXPECT_NEAR(g.value, eval_on_line(e, line), 1e-14);
  EXPECT_NEAR(g.d_theta, (eval_on_line(e, {0.9 + h, 0.4}) - eval_on_line(e, {0.9 - h, 0.4})) / (2 * h), 1e-7);
  EXPECT_NEAR(g.d_p, (eval_on_line(e, {0.9, 0.4 + h}) - eval_on_line(e, {0.9, 0.4 - h})) / (2 * h), 1e-7);
}

TEST(Envelope, Circle) {
  const Envelope env = envelope(parse("p(0) - 2"), 128);
  ASSERT_EQ(env.branches.size(), 1u);
  EXPECT_TRUE(env.branches[0].closed);
  EXPECT_EQ(env.branches[0].points.size(), 128u);
  for (const auto& p : env.branches[0].points) EXPECT_NEAR(std::abs(p.point), 2.0, 1e-12);
}

TEST(Envelope, Ellipse) {
  const Envelope env = envelope(parse("p(1)*p(-1) - 1"), 360);
  const auto pts = all_points(env);
  ASSERT_GT(pts.size(), 100u);
  EXPECT_LT(conic_discriminant(pts), 0.0);
  for (const auto& z : pts) EXPECT_NEAR(z.real() * z.real() / 2.0 + z.imag() * z.imag(), 1.0, 1e-9);
}

TEST(Envelope, Cardioid) {
  const Envelope env = envelope(parse("4*p(1)^3 - 27*p"), 512);
  const auto pts = all_points(env);
  ASSERT_GT(pts.size(), 500u);
  for (const auto& z : pts) {
    const double r2 = std::norm(z), x = z.real(), y = z.imag();
    const double quartic = r2 * r2 - 4.0 * x * r2 - 4.0 * y * y;
    EXPECT_LE(std::abs(quartic) / std::pow(r2 + 1.0, 2), 1e-5);
  }
  EXPECT_FALSE(env.singular_thetas.empty());
}

TEST(Envelope, Parabola) {
  const Envelope env = envelope(parse("p(0)*(p(1)-p) - 1"), 720);
  EXPECT_EQ(env.degenerate_thetas.size(), 2u);
  std::vector<Complex> near;
  for (const auto& z : all_points(env)) {
    EXPECT_NEAR(z.real(), z.imag() * z.imag() / 4.0 - 1.0, 1e-9 * (1.0 + std::norm(z)));
    if (std::abs(z) < 10.0) near.push_back(z);
  }
  ASSERT_GT(near.size(), 50u);
  EXPECT_NEAR(conic_discriminant(near), 0.0, 1e-6);
}

TEST(Envelope, PointsSolveTheirLines) {
  for (std::string_view text : {"p(1)*p(-1) - 1", "4*p(1)^3 - 27*p", "p(1+1i)*p(-2) - 0.5*p^2 - 1"}) {
    const Expr e = parse(text);
    const Envelope env = envelope(e, 256);
    for (const auto& b : env.branches)
      for (const auto& pt : b.points) {
        const TangentLine line(pt.theta, pt.p);
        EXPECT_LE(std::abs(eval_on_line(e, line)), 1e-8 * std::max(1.0, std::pow(std::abs(pt.p), e.degree_in_p())));
        EXPECT_LE(std::abs(pedal_of(line, pt.point)), 1e-12 * std::max(1.0, std::abs(pt.point)));
      }
  }
}

TEST(Envelope, BranchSelection) {
  const Expr e = parse("p(1)*p(-1) - 1");
  const Envelope all = envelope(e, 128, Branch::All);
  const Envelope max = envelope(e, 128, Branch::Max);
  const Envelope min = envelope(e, 128, Branch::Min);
  ASSERT_EQ(max.branches.size(), 1u);
  ASSERT_EQ(min.branches.size(), 1u);
  EXPECT_EQ(all_points(all).size(), 256u);
  for (std::size_t i = 0; i < max.branches[0].points.size(); ++i)
    EXPECT_GT(max.branches[0].points[i].p, min.branches[0].points[i].p);
  EXPECT_EQ(parse_branch("max"), Branch::Max);
  EXPECT_EQ(parse_branch("all"), Branch::All);
  EXPECT_THROW(parse_branch("outer"), Error);
}

TEST(Envelope, Errors) {
  auto code = [](std::string_view text, int samples) {
    try {
      envelope(parse(text), samples);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code("p(1) - p", 128), ErrorCode::DegenerateInP);
  EXPECT_EQ(code("r(1) - p", 128), ErrorCode::PointDomainAtomInLineContext);
  EXPECT_THROW(envelope(parse("p - 1"), 63), Error);
}

TEST(Envelope, ExpansionMaxBranchIsBoundary) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = covals::testing::random_matrix(rng, 3);
    const std::string text = expansion_to_text(greedy_expand(a));
    const Expr e = parse(text);
    for (int i = 0; i < 8; ++i) {
      const TangentLine line(0.8 * i, 0.3 * i - 1.0);
      EXPECT_NEAR(eval_on_line(e, line), covals::testing::oracle_det_pedal(a, line.theta, line.p),
                  1e-8 * std::pow(std::max(1.0, a.frobenius_norm()), 3));
    }
    const Envelope env = envelope(e, 720, Branch::Max);
    const BoundaryTrace t = trace_boundary(a, 720);
    EXPECT_LE(hausdorff_distance(all_points(env), trace_points(t)), 1e-4 * t.scale);
  }
}
