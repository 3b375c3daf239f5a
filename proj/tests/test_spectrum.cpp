#include <gtest/gtest.h>

#include <random>

#include "covals/builtins.hpp"
#include "covals/error.hpp"
#include "covals/spectrum.hpp"
#include "support.hpp"

using namespace covals;
using covals::testing::multiset_gap;

TEST(AdjugateTracePoly, ThreeByThreeForm) {
  std::mt19937_64 rng(43);
  const CMatrix a = covals::testing::random_matrix(rng, 3);
  const CVector e = eigenvalues(a);
  const Complex t1 = t_k(a, 1, e), t2 = t_k(a, 2, e);
  const UniPoly q = adjugate_trace_poly(a);
  ASSERT_EQ(q.degree(), 1);
  EXPECT_LT(std::abs(q.coeff(1) - t1), 1e-10 * std::abs(t1));
  EXPECT_LT(std::abs(q.coeff(0) - (-t1 * a.trace() + t2)), 1e-9 * std::abs(t1) * a.frobenius_norm());
}

TEST(AdjugateTracePoly, FourByFourForm) {
  std::mt19937_64 rng(47);
  const CMatrix a = covals::testing::random_matrix(rng, 4);
  const SpectralData sd = spectral_data(a);
  const Complex t1 = t_k(a, 1, sd.eigenvalues), t2 = t_k(a, 2, sd.eigenvalues), t3 = t_k(a, 3, sd.eigenvalues);
  const Complex e1 = sd.elementary[1], e2 = sd.elementary[2];
  const UniPoly q = adjugate_trace_poly(a);
  const double s = std::abs(t1) * std::pow(a.frobenius_norm(), 2);
  EXPECT_LT(std::abs(q.coeff(2) - t1), 1e-10 * s);
  EXPECT_LT(std::abs(q.coeff(1) - (-t1 * e1 + t2)), 1e-10 * s);
  EXPECT_LT(std::abs(q.coeff(0) - (t1 * e2 - t2 * e1 + t3)), 1e-10 * s);
}

TEST(AdjugateTracePoly, NormalIsZero) {
  const CVector d{1.0, 2.0, 3.0};
  EXPECT_TRUE(adjugate_trace_poly(CMatrix::diagonal(d)).is_zero());
}

// tr(adj(xI - A)(A* - Abar)) evaluated directly at a point, with Abar taken
// from the Schur-free identity Abar = conj of A's eigenvalues on a triangular A.
TEST(AdjugateTracePoly, DirectAdjugateOnTriangular) {
  std::mt19937_64 rng(53);
  const CMatrix a = covals::testing::random_upper_triangular(rng, 4);
  CMatrix abar(4);
  for (int i = 0; i < 4; ++i) abar(i, i) = std::conj(a(i, i));
  const Complex x{0.3, -0.7};
  const CMatrix m = x * CMatrix::identity(4) - a;
  const CMatrix adj = determinant(m) * inverse(m);
  const Complex direct = (adj * (a.adjoint() - abar)).trace();
  const UniPoly q = adjugate_trace_poly(a);
  EXPECT_LT(std::abs(q(x) - direct), 1e-10 * q.magnitude_at(x));
}

TEST(SecondaryValues, A0) {
  const SecondarySpectrum s = secondary_values(find_builtin("A0")->matrix);
  ASSERT_EQ(s.values.size(), 1u);
  EXPECT_LT(std::abs(s.values[0] - Complex(5.0 / 16.0, 14.0 / 16.0)), 1e-10);
  EXPECT_NEAR(s.t1, 16.0, 1e-10);
}

TEST(SecondaryValues, A4) {
  const CMatrix a4 = find_builtin("A4")->matrix;
  const UniPoly q = adjugate_trace_poly(a4);
  ASSERT_EQ(q.degree(), 2);
  // Proportional to x^2 + 2ix - 2 with factor 20.
  EXPECT_LT(std::abs(q.coeff(2) - 20.0), 1e-9);
  EXPECT_LT(std::abs(q.coeff(1) / q.coeff(2) - Complex(0, 2)), 1e-9);
  EXPECT_LT(std::abs(q.coeff(0) / q.coeff(2) + 2.0), 1e-9);
  const SecondarySpectrum s = secondary_values(a4);
  EXPECT_LT(multiset_gap(s.values, {{1, -1}, {-1, -1}}), 1e-9);
}

TEST(SecondaryValues, NormalFlag) {
  const CVector d{1.0, 2.0, 3.0};
  const SecondarySpectrum s = secondary_values(CMatrix::diagonal(d));
  EXPECT_TRUE(s.normal_flag);
  EXPECT_TRUE(s.values.empty());
}

TEST(SecondaryValues, RequiresThree) {
  EXPECT_THROW(secondary_values(CMatrix(2)), Error);
}

TEST(InNumericalRange, Examples) {
  const CMatrix a0 = find_builtin("A0")->matrix;
  for (const auto& l : eigenvalues(a0)) EXPECT_TRUE(in_numerical_range(a0, l));
  EXPECT_TRUE(in_numerical_range(a0, {5.0 / 16.0, 14.0 / 16.0}));
  EXPECT_FALSE(in_numerical_range(a0, a0.trace() / 3.0 + 10.0 * a0.frobenius_norm()));
  EXPECT_THROW(in_numerical_range(a0, 0.0, 1e-8, 4), Error);
}

TEST(SpectrumProperty, CentroidInsideRange) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const CMatrix a = covals::testing::random_upper_triangular(rng, n);
    const SecondarySpectrum s = secondary_values(a);
    ASSERT_EQ(static_cast<int>(s.values.size()), n - 2);
    Complex mean{};
    for (const auto& v : s.values) mean += v;
    mean /= static_cast<double>(n - 2);
    EXPECT_LT(std::abs(mean - s.centroid), 1e-12 * a.frobenius_norm());
    EXPECT_TRUE(in_numerical_range(a, s.centroid, 1e-8)) << "trial " << trial;
  }
}

TEST(SpectrumProperty, ThreeByThreeFormula) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = covals::testing::random_matrix(rng, 3);
    const CVector e = eigenvalues(a);
    const Complex chi = a.trace() - t_k(a, 2, e) / t_k(a, 1, e);
    EXPECT_LT(std::abs(secondary_values(a).values[0] - chi), 1e-10 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST(SpectrumProperty, RayleighQuotientForm) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = covals::testing::random_upper_triangular(rng, 3);
    const Complex b1 = a(0, 1), b2 = a(0, 2), c1 = a(1, 2);
    const CVector u{c1, -b2, b1};
    const CVector au = a.apply(u);
    Complex num{};
    double den = 0.0;
    for (int i = 0; i < 3; ++i) {
      num += std::conj(u[i]) * au[i];
      den += std::norm(u[i]);
    }
    EXPECT_LT(std::abs(secondary_values(a).values[0] - num / den), 1e-10 * a.frobenius_norm());
  }
}

TEST(SpectrumProperty, FourByFourQuadratic) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const CMatrix a = covals::testing::random_matrix(rng, 4);
    const CVector e = eigenvalues(a);
    const Complex t1 = t_k(a, 1, e), t2 = t_k(a, 2, e), tm1 = t_k(a, -1, e);
    // t1 x^2 - (t1 tr A - t2) x - det(A) t_{-1} = 0
    const UniPoly q({-determinant(a) * tm1, -(t1 * a.trace() - t2), t1});
    EXPECT_LT(multiset_gap(uni_roots(q), secondary_values(a).values), 1e-9 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST(Decomposition, DirectSumIsSecondary) {
  std::mt19937_64 rng(73);
  CMatrix a(4);
  const Complex lambda{3.0, 2.0};
  a(0, 0) = lambda;
  const CMatrix d = covals::testing::random_upper_triangular(rng, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i + 1, j + 1) = d(i, j);
  const DecompositionReport r = decomposition_diagnostic(a, lambda);
  EXPECT_TRUE(r.is_eigen);
  EXPECT_TRUE(r.is_secondary);
  EXPECT_TRUE(r.consistent);
}

TEST(Decomposition, MissingCaseIsInconclusive) {
  std::mt19937_64 rng(79);
  const int m = 3;
  const CMatrix d = covals::testing::random_upper_triangular(rng, m);
  CVector c(m);
  for (auto& x : c) x = covals::testing::random_complex(rng);
  const CVector dc = d.apply(c);
  Complex num{};
  double den = 0.0;
  for (int i = 0; i < m; ++i) {
    num += std::conj(c[i]) * dc[i];
    den += std::norm(c[i]);
  }
  const Complex lambda = num / den;
  // Row vector b* = ((lambda I - D) c)*.
  CVector b(m);
  for (int i = 0; i < m; ++i) b[i] = lambda * c[i] - dc[i];
  CMatrix a(m + 1);
  a(0, 0) = lambda;
  for (int j = 0; j < m; ++j) a(0, j + 1) = std::conj(b[j]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i + 1, j + 1) = d(i, j);

  // b* (lambda I - D)^{-1} b = c* b = 0 by construction.
  const CMatrix shifted = lambda * CMatrix::identity(m) - d;
  const CVector sb = inverse(shifted).apply(b);
  Complex quad{};
  for (int i = 0; i < m; ++i) quad += std::conj(b[i]) * sb[i];
  EXPECT_LT(std::abs(quad), 1e-10);

  const DecompositionReport r = decomposition_diagnostic(a, lambda);
  EXPECT_TRUE(r.is_secondary);
  EXPECT_FALSE(r.outside_wd);
  EXPECT_GT(r.b_norm, 1e-3);
  EXPECT_EQ(r.conclusion, DecompositionConclusion::Inconclusive);
}

TEST(Decomposition, GenericIsNotSecondary) {
  std::mt19937_64 rng(83);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 10; ++trial) {
    CMatrix a = covals::testing::random_upper_triangular(rng, 4);
    const Complex lambda = a(0, 0) + Complex(8.0, 0.0);
    a(0, 0) = lambda;
    const DecompositionReport probe = decomposition_diagnostic(a, lambda);
    if (!probe.outside_wd) continue;
    ++checked;
    EXPECT_FALSE(probe.is_secondary);
    EXPECT_EQ(probe.conclusion, DecompositionConclusion::NotDecomposable);
    EXPECT_TRUE(probe.consistent);
  }
  EXPECT_GT(checked, 0);
}

TEST(Decomposition, Preconditions) {
  std::mt19937_64 rng(89);
  const CMatrix full = covals::testing::random_matrix(rng, 3);
  try {
    decomposition_diagnostic(full, full(0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotTriangular);
  }
  const CMatrix tri = covals::testing::random_upper_triangular(rng, 3);
  try {
    decomposition_diagnostic(tri, tri(0, 0) + 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEigenvalue);
  }
}
