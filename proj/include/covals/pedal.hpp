#pragma once

#include <array>
#include <vector>

#include "covals/types.hpp"

namespace covals {

/// Directed line {(x, y) : x sin(theta) - y cos(theta) = p} in copolar form.
struct TangentLine {
  double theta = 0.0;  // tangential angle, kept in [0, 2 pi)
  double p = 0.0;      // signed pedal distance of the origin

  TangentLine() = default;
  TangentLine(double theta_in, double p_in);

  /// Line through `from` with direction towards `to`.
  static TangentLine through(Complex from, Complex to);
};

/// A pole of a coval: a finite point, or a direction at infinity whose pedal
/// coordinate is p(z inf) = p(z) - p.
struct Pole {
  enum class Kind { Finite, Infinite };
  Kind kind = Kind::Finite;
  Complex value{};

  static Pole finite(Complex z) { return {Kind::Finite, z}; }
  static Pole infinite(Complex direction) { return {Kind::Infinite, direction}; }
  bool is_finite() const noexcept { return kind == Kind::Finite; }
  friend bool operator==(const Pole&, const Pole&) = default;
};

/// p + cos(theta) Im a - sin(theta) Re a for a finite pole, and the same
/// without the leading p for a direction at infinity.
double pedal_of(const TangentLine& line, const Pole& pole);
double pedal_of(const TangentLine& line, Complex finite_pole);

/// d p(a) / d theta along a line family with dp/dtheta given; equals the
/// contrapedal coordinate of the envelope point.
double pedal_theta_derivative(double theta, double dp_dtheta, const Pole& pole);

/// Polyline approximation of a plane curve.
struct CurveSample {
  std::vector<Complex> points;
  bool closed = false;
};

struct CurveQuantities {
  double r = 0.0;      // |z - a|
  double p = 0.0;      // pedal coordinate
  double pc = 0.0;     // contrapedal coordinate
  double theta = 0.0;  // tangential angle
};

/// r, p and p_c at sample `index` with a centered-difference unit tangent.
/// DegenerateTangent when the neighbours coincide; interior indices only for
/// open curves.
CurveQuantities curve_quantities(const CurveSample& curve, std::size_t index, Complex a);

/// Centered finite-difference estimate of d p(a) / d theta at `index`.
double curve_pedal_theta_derivative(const CurveSample& curve, std::size_t index, Complex a);

/// Point of contact of the line (theta, p) with the envelope of its family.
/// The result lies on the line exactly (up to rounding).
Complex envelope_point(double theta, double p, double dp_dtheta);

/// p(d) from p(a), p(b), p(c) through the vanishing 4x4 determinant with rows
/// (p, 1, z, conj z). Colinear a, b, c fall back to the 3x3 identity with rows
/// (p, 1, z); ColinearPoles if d is then off their common line.
double triangulate_coval(Complex a, Complex b, Complex c, Complex d,
                         const std::array<double, 3>& pedals);
double triangulate_coval(Complex a, Complex b, Complex c, Complex d, const TangentLine& line);

/// r(d)^2 from r(a)^2, r(b)^2, r(c)^2 through the vanishing 5x5 determinant.
/// ColinearPoles when a, b, c are colinear.
double triangulate_oval(Complex a, Complex b, Complex c, Complex d,
                        const std::array<double, 3>& squared_distances);
double triangulate_oval(Complex a, Complex b, Complex c, Complex d, Complex z);

/// True when the triangle abc has area <= 1e-12 * (max pairwise distance)^2.
bool colinear(Complex a, Complex b, Complex c);

}  // namespace covals
