#include <gtest/gtest.h>

#include <random>

#include "covals/builtins.hpp"
#include "covals/error.hpp"
#include "covals/matrix.hpp"
#include "support.hpp"

using namespace covals;
using covals::testing::multiset_gap;

TEST(CharPoly, Zero) {
  const UniPoly p = char_poly(CMatrix(2));
  EXPECT_EQ(p.degree(), 2);
  EXPECT_LT(std::abs(p.coeff(0)) + std::abs(p.coeff(1)), 1e-15);
  EXPECT_EQ(p.coeff(2), Complex(1.0));
}

TEST(CharPoly, DiagonalPlusMinusOne) {
  const CVector d{1.0, -1.0};
  const UniPoly p = char_poly(CMatrix::diagonal(d));
  EXPECT_LT(std::abs(p.coeff(0) + 1.0), 1e-15);
  EXPECT_LT(std::abs(p.coeff(1)), 1e-15);
}

TEST(CharPoly, MatchesExpandedProduct) {
  const CMatrix a0 = find_builtin("A0")->matrix;
  const CVector expected = covals::testing::expand_roots({{1, 1}, {5, -1}, {-1, 2}});
  const UniPoly p = char_poly(a0);
  for (int k = 0; k <= 3; ++k) EXPECT_LT(std::abs(p.coeff(k) - expected[k]), 1e-12 * std::max(1.0, std::abs(expected[k])));
}

TEST(Eigenvalues, ReferenceMatrices) {
  EXPECT_LT(multiset_gap(eigenvalues(find_builtin("A0")->matrix), {{1, 1}, {5, -1}, {-1, 2}}), 1e-12);
  EXPECT_LT(multiset_gap(eigenvalues(find_builtin("A4")->matrix), {{1, -1}, {-1, -1}, 1.0, -1.0}), 1e-12);
  EXPECT_LT(multiset_gap(eigenvalues(CMatrix::identity(3)), {1.0, 1.0, 1.0}), 1e-12);
}

TEST(Eigenvalues, DeterministicOrder) {
  const CVector e = eigenvalues(find_builtin("A0")->matrix);
  ASSERT_EQ(e.size(), 3u);
  EXPECT_NEAR(e[0].real(), 5.0, 1e-12);  // largest modulus first
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_GE(std::abs(e[i - 1]) + 1e-12, std::abs(e[i]));
}

TEST(HermitianMaxEig, Diagonal) {
  const CVector d{3.0, 1.0, 2.0};
  const MaxEigen m = hermitian_max_eig(CMatrix::diagonal(d));
  EXPECT_NEAR(m.value, 3.0, 1e-14);
  EXPECT_NEAR(std::abs(m.vector[0]), 1.0, 1e-14);
}

TEST(HermitianMaxEig, Swap) {
  const MaxEigen m = hermitian_max_eig(CMatrix{{0, 1}, {1, 0}});
  EXPECT_NEAR(m.value, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(m.vector[0]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(m.vector[0] - m.vector[1]), 0.0, 1e-12);
}

TEST(HermitianMaxEig, ImaginaryPartOfA4) {
  const CMatrix im = find_builtin("A4")->matrix.skew_hermitian_part();
  const HermitianEigen e = hermitian_eig(im);
  EXPECT_NEAR(e.values.back(), 2.222569862, 1e-8);
  EXPECT_NEAR(e.values.front(), -2.122191853, 1e-8);
}

TEST(HermitianMaxEig, RejectsNonHermitian) {
  try {
    hermitian_max_eig(CMatrix{{0, 1}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(HermitianMaxEig, ResidualAndAgreementWithCharPoly) {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const CMatrix h = covals::testing::random_hermitian(rng, n);
      const MaxEigen m = hermitian_max_eig(h);
      const CVector hv = h.apply(m.vector);
      double res = 0.0;
      for (int i = 0; i < n; ++i) res += std::norm(hv[i] - m.value * m.vector[i]);
      EXPECT_LE(std::sqrt(res), 1e-10 * h.frobenius_norm());
      double top = -1e300;
      for (const auto& z : eigenvalues(h)) top = std::max(top, z.real());
      EXPECT_NEAR(m.value, top, 1e-9 * std::max(1.0, h.frobenius_norm()));
    }
  }
}

TEST(Tk, NormalMatrixHasZeroT1) {
  const CVector d{1.0, {0, 2}, -3.0};
  const CMatrix a = CMatrix::diagonal(d);
  EXPECT_LT(std::abs(t_k(a, 1, d)), 1e-14);
}

TEST(Tk, ReferenceValues) {
  const CMatrix a0 = find_builtin("A0")->matrix;
  const CVector e = eigenvalues(a0);
  EXPECT_LT(std::abs(t_k(a0, 1, e) - 16.0), 1e-10);
  // Hand evaluation for upper triangular [[l1,b1,b2],[0,l2,c1],[0,0,l3]].
  const Complex l1{1, 1}, l2{5, -1}, l3{-1, 2}, b1{2, 1}, b2{1, 0}, c1{3, 1};
  const Complex t2 = (l1 + l2) * b1 * std::conj(b1) + (l1 + l3) * b2 * std::conj(b2) + (l2 + l3) * c1 * std::conj(c1) +
                     b1 * c1 * std::conj(b2);
  EXPECT_LT(std::abs(t2 - Complex(75, 18)), 1e-12);
  EXPECT_LT(std::abs(t_k(a0, 2, e) - t2), 1e-10);
}

TEST(Tk, MinusOneNeedsInvertible) {
  try {
    t_k(CMatrix{{0, 1}, {0, 0}}, -1, CVector{0.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Tk, T1RealNonNegative) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix a = covals::testing::random_matrix(rng, 2 + trial % 5);
    const Complex t1 = t_k(a, 1, eigenvalues(a));
    const double scale = std::pow(a.frobenius_norm(), 2);
    EXPECT_GE(t1.real(), -1e-10 * scale);
    EXPECT_LE(std::abs(t1.imag()), 1e-10 * scale);
  }
}

TEST(ElemSym, Examples) {
  EXPECT_LT(std::abs(elem_sym(CVector{1.0, 2.0, 3.0}, 2) - 11.0), 1e-14);
  EXPECT_LT(std::abs(elem_sym(CVector{{1, 1}, {5, -1}, {-1, 2}}, 1) - Complex(5, 2)), 1e-14);
  EXPECT_EQ(elem_sym(CVector{4.0, 5.0}, 0), Complex(1.0));
}

TEST(SpectralData, ElementarySums) {
  std::mt19937_64 rng(29);
  const CMatrix a = covals::testing::random_matrix(rng, 5);
  const SpectralData sd = spectral_data(a);
  EXPECT_EQ(sd.elementary.front(), Complex(1.0));
  EXPECT_LT(std::abs(sd.elementary[1] - a.trace()), 1e-10 * a.frobenius_norm());
}

TEST(MatrixProperty, TraceOfPedalMatrix) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const CMatrix a = covals::testing::random_matrix(rng, n);
    const double theta = u(rng), p = u(rng);
    const double lhs = pedal_matrix(a, theta, p).trace().real();
    const double rhs = n * covals::testing::oracle_pedal(theta, p, a.trace() / static_cast<double>(n));
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, a.frobenius_norm()));
  }
}

TEST(MatrixProperty, CharPolyVanishesAtEigenvalues) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = covals::testing::random_matrix(rng, 2 + trial % 7);
    const UniPoly cp = char_poly(a);
    for (const auto& l : eigenvalues(a)) EXPECT_LE(std::abs(cp(l)), 1e-8 * cp.magnitude_at(l));
  }
}

TEST(Determinant, MatchesOracle) {
  std::mt19937_64 rng(41);
  for (int n = 1; n <= 7; ++n) {
    const CMatrix a = covals::testing::random_matrix(rng, n);
    std::vector<std::vector<Complex>> rows(n, std::vector<Complex>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = a(i, j);
    const Complex d = covals::testing::oracle_det(rows);
    EXPECT_LT(std::abs(determinant(a) - d), 1e-12 * std::max(1.0, std::abs(d)));
    const CMatrix prod = a * inverse(a);
    EXPECT_LT((prod - CMatrix::identity(n)).frobenius_norm(), 1e-10);
  }
}
