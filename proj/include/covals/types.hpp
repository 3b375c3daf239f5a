#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace covals {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace covals
