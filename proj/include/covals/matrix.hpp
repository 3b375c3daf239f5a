#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "covals/poly.hpp"
#include "covals/types.hpp"

namespace covals {

/// Dense square complex matrix, row-major.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n);
  CMatrix(int n, CVector entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(int n);
  static CMatrix diagonal(std::span<const Complex> diag);

  int size() const noexcept { return n_; }
  Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  Complex operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * n_ + j)]; }
  const CVector& data() const noexcept { return data_; }

  CMatrix adjoint() const;
  /// (A + A*) / 2
  CMatrix hermitian_part() const;
  /// (A - A*) / (2i)
  CMatrix skew_hermitian_part() const;
  /// Trailing (n-k) x (n-k) block starting at row/column k.
  CMatrix trailing_block(int k) const;

  Complex trace() const noexcept;
  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;

  CVector apply(std::span<const Complex> v) const;

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(Complex s, const CMatrix& a);

 private:
  int n_ = 0;
  CVector data_;
};

/// Eigenvalues together with their elementary symmetric functions.
struct SpectralData {
  CVector eigenvalues;
  CVector elementary;  // e_0 .. e_n
};

/// Determinant by LU with partial pivoting.
Complex determinant(const CMatrix& a);
/// Inverse by LU with partial pivoting; SingularMatrix on an exactly zero pivot.
CMatrix inverse(const CMatrix& a);

/// det(xI - A), monic of degree n, via the Faddeev-LeVerrier recursion on the
/// norm-scaled matrix.
UniPoly char_poly(const CMatrix& a);

/// Roots of the characteristic polynomial ordered by descending modulus, then
/// descending real part.
CVector eigenvalues(const CMatrix& a, const RootOptions& options = {});
SpectralData spectral_data(const CMatrix& a, const RootOptions& options = {});

struct HermitianEigen {
  std::vector<double> values;     // ascending
  std::vector<CVector> vectors;   // unit eigenvectors, vectors[i] for values[i]
};

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. NotHermitian if ||H - H*|| exceeds 1e-12 ||H|| (relative).
HermitianEigen hermitian_eig(const CMatrix& h);

struct MaxEigen {
  double value;
  CVector vector;
};
MaxEigen hermitian_max_eig(const CMatrix& h);

/// tr(A^k A*) - sum_j lambda_j^k conj(lambda_j); k >= -1.
Complex t_k(const CMatrix& a, int k, std::span<const Complex> eigs);

/// k-th elementary symmetric polynomial of the values.
Complex elem_sym(std::span<const Complex> values, int k);

/// p I + Im(e^{-i theta} A), Hermitian; its determinant is det p(A).
CMatrix pedal_matrix(const CMatrix& a, double theta, double p);
double det_pedal(const CMatrix& a, double theta, double p);

}  // namespace covals
