#include "covals/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covals/error.hpp"

namespace covals {

UniPoly adjugate_trace_poly(const CMatrix& a) { return adjugate_trace_poly(a, spectral_data(a)); }

UniPoly adjugate_trace_poly(const CMatrix& a, const SpectralData& spectrum) {
  const int n = a.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "adjugate_trace_poly: n must be at least 2");
  const double fro2 = std::pow(a.frobenius_norm(), 2);
  const CVector& eigs = spectrum.eigenvalues;
  const Complex t1 = t_k(a, 1, eigs);
  if (t1.real() <= kNormalityThreshold * fro2) return UniPoly{};

  CVector coeffs(static_cast<std::size_t>(n - 1));
  for (int j = 1; j <= n - 1; ++j) {
    const Complex tj = j == 1 ? Complex{t1.real()} : t_k(a, j, eigs);
    for (int k = 0; k <= n - 1 - j; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      coeffs[static_cast<std::size_t>(n - 1 - j - k)] += sign * tj * spectrum.elementary[static_cast<std::size_t>(k)];
    }
  }
  return UniPoly(std::move(coeffs));
}

SecondarySpectrum secondary_values(const CMatrix& a, const RootOptions& options) {
  if (a.size() < 3) throw Error(ErrorCode::InvalidArgument, "secondary_values: n must be at least 3");
  const SpectralData spectrum = spectral_data(a, options);
  SecondarySpectrum out;
  out.t1 = t_k(a, 1, spectrum.eigenvalues).real();
  const UniPoly q = adjugate_trace_poly(a, spectrum);
  if (q.is_zero()) {
    out.normal_flag = true;
    return out;
  }
  RootOptions framed = options;
  framed.scale = std::max(framed.scale, a.frobenius_norm());
  out.values = uni_roots(q, framed);
  for (const auto& v : out.values) out.centroid += v;
  out.centroid /= static_cast<double>(out.values.size());
  return out;
}

double numerical_range_margin(const CMatrix& a, Complex z, int samples) {
  if (samples < 8) throw Error(ErrorCode::InvalidArgument, "numerical_range_margin: need >= 8 samples");
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const double phi = 2.0 * kPi * s / samples;
    const Complex rot = std::polar(1.0, -phi);
    const double support = hermitian_max_eig((rot * a).hermitian_part()).value;
    margin = std::min(margin, support - (rot * z).real());
  }
  return margin;
}

bool in_numerical_range(const CMatrix& a, Complex z, double tol, int samples) {
  return numerical_range_margin(a, z, samples) >= -tol * std::max(1.0, a.frobenius_norm());
}

DecompositionReport decomposition_diagnostic(const CMatrix& a, Complex lambda, double tol) {
  const int n = a.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "decomposition_diagnostic: n must be at least 3");
  const double scale = std::max(a.max_abs(), 1e-300);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(a(i, j)) > tol * scale) {
        throw Error(ErrorCode::NotTriangular, "decomposition_diagnostic: matrix is not upper triangular");
      }
  if (std::abs(a(0, 0) - lambda) > tol * std::max(1.0, std::abs(lambda))) {
    throw Error(ErrorCode::NotEigenvalue, "decomposition_diagnostic: lambda is not the (0,0) entry");
  }

  DecompositionReport r;
  r.is_eigen = true;

  // Eigenvalues of a triangular matrix are its diagonal.
  SpectralData spectrum;
  for (int i = 0; i < n; ++i) spectrum.eigenvalues.push_back(a(i, i));
  for (int k = 0; k <= n; ++k) spectrum.elementary.push_back(elem_sym(spectrum.eigenvalues, k));
  const UniPoly q = adjugate_trace_poly(a, spectrum);
  if (q.is_zero()) {
    r.is_secondary = true;
  } else {
    r.secondary_residual = std::abs(q(lambda)) / std::max(q.magnitude_at(lambda), 1e-300);
    r.is_secondary = r.secondary_residual <= tol;
  }

  r.outside_wd = !in_numerical_range(a.trailing_block(1), lambda, tol);

  double b2 = 0.0;
  for (int j = 1; j < n; ++j) b2 += std::norm(a(0, j));
  r.b_norm = std::sqrt(b2);

  if (r.is_secondary && r.outside_wd) {
    r.conclusion = DecompositionConclusion::MustDecompose;
    r.consistent = r.b_norm <= std::sqrt(tol) * std::max(1.0, a.frobenius_norm());
  } else if (r.is_secondary) {
    r.conclusion = DecompositionConclusion::Inconclusive;
    r.consistent = true;
  } else {
    r.conclusion = DecompositionConclusion::NotDecomposable;
    r.consistent = r.b_norm > 0.0;
  }
  return r;
}

}  // namespace covals
