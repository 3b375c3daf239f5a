#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covals/matrix.hpp"

namespace covals {

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;  // not applicable to this matrix
  std::string detail;
};

struct VerifyOptions {
  double tol = 1e-8;
  int theta_samples = 720;
  int lines = 1000;
  std::uint64_t seed = 42;
};

/// Runs every invariant that applies to `a`. Deterministic for a fixed seed.
std::vector<CheckResult> verify_matrix(const CMatrix& a, const VerifyOptions& options = {});

/// Largest distance after greedy nearest matching of two multisets; infinity
/// when the sizes differ.
double multiset_distance(CVector a, CVector b);

/// det(A) (e2(A^-1 A*) - e2(A^-1 Abar)) + t1 (chi+ conj(chi-) + conj(chi+) chi-)
/// for an invertible 4x4 matrix: the order-2 expansion coefficient.
double gamma2_closed_form(const CMatrix& a);

}  // namespace covals
