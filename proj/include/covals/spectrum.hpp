#pragma once

#include "covals/matrix.hpp"
#include "covals/poly.hpp"

namespace covals {

/// Secondary values of a matrix: the n-2 roots of tr(adj(xI - A)(A* - Abar)).
struct SecondarySpectrum {
  CVector values;
  Complex centroid{};
  double t1 = 0.0;
  bool normal_flag = false;
};

/// t1 <= kNormalityThreshold * ||A||_F^2 declares the matrix normal.
inline constexpr double kNormalityThreshold = 1e-10;

/// tr(adj(xI - A)(A* - Abar)) expanded through t_j(A) and e_k(A):
///   sum_{j=1}^{n-1} sum_{k=0}^{n-1-j} t_j x^{n-1-j-k} (-1)^k e_k.
/// The zero polynomial is returned for normal matrices.
UniPoly adjugate_trace_poly(const CMatrix& a);
UniPoly adjugate_trace_poly(const CMatrix& a, const SpectralData& spectrum);

SecondarySpectrum secondary_values(const CMatrix& a, const RootOptions& options = {});

/// min over sampled directions phi of  lambda_max(Re(e^{-i phi} A)) - Re(e^{-i phi} z).
/// Non-negative (up to sampling) exactly when z lies in W(A).
double numerical_range_margin(const CMatrix& a, Complex z, int samples = 720);

/// Support-function membership test for W(A). The tolerance is scaled by
/// max(1, ||A||_F).
bool in_numerical_range(const CMatrix& a, Complex z, double tol = 1e-8, int samples = 720);

enum class DecompositionConclusion {
  MustDecompose,    // secondary value outside W(D): b has to vanish
  Inconclusive,     // secondary value inside W(D): nothing follows
  NotDecomposable,  // not a secondary value: b cannot vanish
};

struct DecompositionReport {
  bool is_eigen = false;
  bool is_secondary = false;
  bool outside_wd = false;
  double secondary_residual = 0.0;  // |q(lambda)| / sum |q_k||lambda|^k
  double b_norm = 0.0;              // norm of the first-row tail
  DecompositionConclusion conclusion = DecompositionConclusion::Inconclusive;
  bool consistent = true;           // the conclusion agrees with the actual b
};

/// Diagnoses whether A = [[lambda, b*], [0, D]] can split off lambda. A must be
/// upper triangular (NotTriangular) with lambda at (0, 0) (NotEigenvalue).
DecompositionReport decomposition_diagnostic(const CMatrix& a, Complex lambda, double tol = 1e-8);

}  // namespace covals
