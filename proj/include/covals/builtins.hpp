#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "covals/matrix.hpp"

namespace covals {

struct NamedMatrix {
  std::string name;
  std::string description;
  CMatrix matrix;
};

/// Reference matrices keyed by name: A0, A4, A3, cardioid, Ab1, Ab_sqrt2, seven.
const std::vector<NamedMatrix>& builtin_matrices();
/// nullptr when the name is unknown.
const NamedMatrix* find_builtin(std::string_view name);

/// a [[1,3,3],[0,1,3],[0,0,1]]
CMatrix cardioid_matrix(double a);
/// [[0,1,b,1],[0,0,1,b],[0,0,0,1],[0,0,0,0]]
CMatrix family_ab(Complex b);

}  // namespace covals
