#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "covals/matrix.hpp"
#include "covals/pedal.hpp"

namespace covals::testing {

inline Complex random_complex(std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> g(0.0, spread);
  return {g(rng), g(rng)};
}

inline CMatrix random_matrix(std::mt19937_64& rng, int n) {
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_complex(rng);
  return a;
}

inline CMatrix random_upper_triangular(std::mt19937_64& rng, int n) {
  CMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = random_complex(rng);
  return a;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int n) {
  const CMatrix a = random_matrix(rng, n);
  return a.hermitian_part();
}

// Unitary from Gram-Schmidt on a random complex matrix.
inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  std::vector<CVector> cols;
  while (static_cast<int>(cols.size()) < n) {
    CVector v(static_cast<std::size_t>(n));
    for (auto& x : v) x = random_complex(rng);
    for (const auto& q : cols) {
      Complex dot{};
      for (int i = 0; i < n; ++i) dot += std::conj(q[i]) * v[i];
      for (int i = 0; i < n; ++i) v[i] -= dot * q[i];
    }
    double nrm = 0.0;
    for (const auto& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    cols.push_back(v);
  }
  CMatrix u(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) u(i, j) = cols[j][i];
  return u;
}

inline CMatrix random_normal(std::mt19937_64& rng, int n, CVector* eigs = nullptr) {
  CVector d(static_cast<std::size_t>(n));
  for (auto& x : d) x = random_complex(rng);
  if (eigs) *eigs = d;
  const CMatrix u = random_unitary(rng, n);
  return u * CMatrix::diagonal(d) * u.adjoint();
}

// Determinant by plain Gaussian elimination with partial pivoting, kept
// separate from the library implementation.
inline Complex oracle_det(std::vector<std::vector<Complex>> m) {
  const std::size_t n = m.size();
  Complex det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == Complex{}) return 0.0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// det(pI + Im(e^{-i theta} A)) assembled entry by entry.
inline double oracle_det_pedal(const CMatrix& a, double theta, double p) {
  const int n = a.size();
  const Complex w = std::polar(1.0, -theta);
  std::vector<std::vector<Complex>> m(static_cast<std::size_t>(n), std::vector<Complex>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex b = w * a(i, j), bt = std::conj(w * a(j, i));
      m[i][j] = (b - bt) / Complex(0.0, 2.0) + (i == j ? p : 0.0);
    }
  return oracle_det(m).real();
}

inline double oracle_pedal(double theta, double p, Complex a) {
  // Signed distance of a to the line x sin(theta) - y cos(theta) = p.
  return p - (a.real() * std::sin(theta) - a.imag() * std::cos(theta));
}

// Largest distance after optimal matching by brute force over permutations
// (sizes <= 6) or greedy matching beyond that.
inline double multiset_gap(CVector a, CVector b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.size() <= 6) {
    std::vector<std::size_t> perm(b.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](Complex u, Complex v) { return std::abs(u - x) < std::abs(v - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline CVector expand_roots(const CVector& roots) {
  CVector c{1.0};
  for (const auto& r : roots) {
    CVector next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

}  // namespace covals::testing
