#pragma once

#include <vector>

#include "covals/matrix.hpp"
#include "covals/pedal.hpp"
#include "covals/poly.hpp"

namespace covals {

/// One term gamma (yz)^order prod(linear pole factors) of the expansion of
/// det(xI - yA* - zA). In pedal space the term is gamma / 4^order times the
/// product of pedal coordinates of the poles.
struct ExpansionLevel {
  int order = 0;
  double gamma = 0.0;
  std::vector<Pole> poles;  // n - 2 order entries
  friend bool operator==(const ExpansionLevel&, const ExpansionLevel&) = default;
};

struct ExpansionTolerances {
  double cleanup = 1e-8;         // zero/divisibility threshold at level 0
  double cascade = 10.0;         // multiplier applied per level
  double reconstruction = 1e-6;  // max coefficient mismatch of the rebuilt polynomial
  friend bool operator==(const ExpansionTolerances&, const ExpansionTolerances&) = default;
};

struct CovalExpansion {
  int n = 0;
  double scale = 1.0;  // Frobenius norm used to normalize A during peeling
  std::vector<ExpansionLevel> levels;
  ExpansionTolerances tolerances;
  double residual = 0.0;            // normalized reconstruction mismatch
  bool has_infinite_poles = false;  // some level used directions at infinity
  std::vector<int> vanished_orders; // orders peeled with a zero restriction
  friend bool operator==(const CovalExpansion&, const CovalExpansion&) = default;

  /// gamma of the level with this order, 0 when absent.
  double gamma(int order) const;
  const ExpansionLevel* level(int order) const;
};

/// f(x, y, z) = det(xI - yA* - zA), recovered from determinant samples on a
/// torus grid (a 2-D discrete Fourier inversion) of the norm-scaled matrix.
HomoTriPoly det_poly3(const CMatrix& a);

/// Peels a conjugate-symmetric homogeneous polynomial with f(1,0,0) != 0
/// level by level. Tolerances are absolute in the frame of f.
CovalExpansion peel(const HomoTriPoly& f, const ExpansionTolerances& tolerances = {},
                    const RootOptions& roots = {});

/// Peels det(xI - yA* - zA) of the norm-scaled matrix, then rescales poles by
/// ||A||_F and gamma_k by ||A||_F^{2k}.
CovalExpansion greedy_expand(const CMatrix& a, const ExpansionTolerances& tolerances = {},
                             const RootOptions& roots = {});

/// Sum over levels of gamma_k 4^{-k} prod p(pole) at the given line.
double expansion_eval(const CovalExpansion& expansion, const TangentLine& line);

/// Rebuilds sum gamma_k (yz)^k prod(factors) as a trivariate polynomial.
HomoTriPoly expansion_polynomial(const CovalExpansion& expansion);

struct RemainderRoots {
  CVector coefficients;  // ascending powers of p, degree n - 2
  CVector roots;
  int real_count = 0;
  bool all_real = false;
};

/// Roots in p of det p(A) - prod_j p(lambda_j) at a fixed angle.
/// DegenerateRemainder for (numerically) normal A.
RemainderRoots remainder_real_rooted(const CMatrix& a, double theta);

/// True when the expansion has no level of order >= 2 with non-negligible
/// normalized gamma.
bool classify_2normal(const CMatrix& a, double tol = 1e-8);

}  // namespace covals
