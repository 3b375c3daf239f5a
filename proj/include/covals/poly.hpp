#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covals/types.hpp"

namespace covals {

/// Univariate complex polynomial, coefficients in ascending degree.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(CVector coeffs) : coeffs_(std::move(coeffs)) {}

  /// Monic polynomial with the given roots (with multiplicity).
  static UniPoly from_roots(std::span<const Complex> roots);

  const CVector& coeffs() const noexcept { return coeffs_; }
  /// Degree of the stored coefficient list; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  Complex coeff(int k) const {
    return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : Complex{};
  }

  Complex operator()(Complex x) const noexcept;
  /// Sum of |a_k| |x|^k, the natural magnitude scale for residuals at x.
  double magnitude_at(Complex x) const noexcept;
  double max_abs_coeff() const noexcept;

  UniPoly derivative() const;

  /// Drops leading coefficients with |a_k| <= rel_tol * max|a|.
  UniPoly& trim(double rel_tol = 0.0);

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(Complex s, const UniPoly& a);

 private:
  CVector coeffs_;
};

struct RootOptions {
  double tol = 1e-10;          // acceptance: |p(z)| <= tol * sum |a_k||z|^k
  int max_iterations = 500;
  double cluster_rel = 1e-4;   // roots closer than this (relative) are merged
  double scale = 0.0;          // lower bound on the root scale; 0 derives it from the roots
  std::uint64_t seed = 0x5eed;
};

struct RootCluster {
  Complex value;
  int multiplicity = 1;
};

/// All deg(p) roots of p, repeated by multiplicity. Aberth-Ehrlich iteration
/// with restarts from a perturbed configuration when progress stalls.
CVector uni_roots(const UniPoly& p, const RootOptions& options = {});

/// Same roots grouped into clusters; each cluster is represented by its mean.
std::vector<RootCluster> uni_roots_clustered(const UniPoly& p,
                                             const RootOptions& options = {});

/// Homogeneous polynomial of degree m in (x, y, z) with complex coefficients.
/// coeff(j, k) multiplies x^(m-j-k) y^j z^k.
class HomoTriPoly {
 public:
  HomoTriPoly() = default;
  explicit HomoTriPoly(int degree);

  int degree() const noexcept { return degree_; }

  Complex coeff(int j, int k) const;
  void set_coeff(int j, int k, Complex value);
  void add_coeff(int j, int k, Complex value);

  Complex operator()(Complex x, Complex y, Complex z) const;

  double max_abs_coeff() const noexcept;
  bool is_zero(double abs_tol = 0.0) const noexcept;

  /// max |conj(coeff(j,k)) - coeff(k,j)|; zero for polynomials satisfying
  /// conj(f(x,y,z)) = f(x,z,y) on real arguments.
  double symmetry_residual() const noexcept;
  /// Replaces each coefficient pair by its conjugate-symmetric average.
  void symmetrize();

  /// Linear factor x - conj(a) y - a z.
  static HomoTriPoly finite_factor(Complex pole);
  /// Linear factor -conj(b) y - b z.
  static HomoTriPoly infinite_factor(Complex direction);
  static HomoTriPoly constant(Complex value);

  friend HomoTriPoly operator+(const HomoTriPoly& a, const HomoTriPoly& b);
  friend HomoTriPoly operator-(const HomoTriPoly& a, const HomoTriPoly& b);
  friend HomoTriPoly operator*(const HomoTriPoly& a, const HomoTriPoly& b);
  friend HomoTriPoly operator*(Complex s, const HomoTriPoly& a);

 private:
  std::size_t index(int j, int k) const;

  int degree_ = 0;
  CVector coeffs_;  // (degree+1)^2 slots, only j + k <= degree used
};

/// Product of x - conj(a) y - a z over finite poles and -conj(b) y - b z over
/// infinite directions; the factor count must equal m_total.
HomoTriPoly tri_linear_product(std::span<const Complex> finite,
                               std::span<const Complex> infinite, int m_total);

/// Exact division by yz. Coefficients with j == 0 or k == 0 are discarded and
/// must not exceed tol * max(1, max|coeff|); otherwise NotDivisible.
HomoTriPoly tri_div_yz(const HomoTriPoly& p, double tol);

/// f(x, 0, 1) as a univariate polynomial in x. Exact coefficient extraction.
UniPoly tri_restrict_x(const HomoTriPoly& p);

/// f(1, y, z) as a dense table: table[j][k] = coeff(j, k), zero for j+k > m.
std::vector<CVector> tri_restrict_yz(const HomoTriPoly& p);

}  // namespace covals
