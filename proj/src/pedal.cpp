#include "covals/pedal.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "covals/error.hpp"

namespace covals {

namespace {

double wrap_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

double unwrap_difference(double d) {
  while (d > kPi) d -= 2.0 * kPi;
  while (d < -kPi) d += 2.0 * kPi;
  return d;
}

std::size_t neighbour(const CurveSample& curve, std::size_t index, int offset) {
  const auto n = static_cast<long long>(curve.points.size());
  long long j = static_cast<long long>(index) + offset;
  if (curve.closed) {
    j = ((j % n) + n) % n;
  } else if (j < 0 || j >= n) {
    throw Error(ErrorCode::InvalidArgument, "curve sample index must be interior for an open curve");
  }
  return static_cast<std::size_t>(j);
}

// u.x v.y - u.y v.x
double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

// Affine interpolation of values at a, b, c to the point d. Expanding the
// vanishing determinant with rows (value, 1, Re z, Im z) along its first row
// gives exactly these barycentric weights; anchoring at the vertex nearest d
// keeps the differences small.
double affine_combination(const std::array<Complex, 3>& z, const std::array<double, 3>& v, Complex d) {
  std::size_t o = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(d - z[i]) < std::abs(d - z[o])) o = i;
  const std::size_t i = (o + 1) % 3, j = (o + 2) % 3;
  const Complex e1 = z[i] - z[o], e2 = z[j] - z[o], r = d - z[o];
  const double area = cross(e1, e2);
  const double wi = cross(r, e2) / area, wj = cross(e1, r) / area;
  return v[o] + wi * (v[i] - v[o]) + wj * (v[j] - v[o]);
}

}  // namespace

TangentLine::TangentLine(double theta_in, double p_in) : theta(wrap_angle(theta_in)), p(p_in) {}

TangentLine TangentLine::through(Complex from, Complex to) {
  const double theta = std::arg(to - from);
  return TangentLine(theta, std::sin(theta) * from.real() - std::cos(theta) * from.imag());
}

double pedal_of(const TangentLine& line, Complex finite_pole) {
  return line.p + std::cos(line.theta) * finite_pole.imag() - std::sin(line.theta) * finite_pole.real();
}

double pedal_of(const TangentLine& line, const Pole& pole) {
  const double offset = std::cos(line.theta) * pole.value.imag() - std::sin(line.theta) * pole.value.real();
  return pole.is_finite() ? line.p + offset : offset;
}

double pedal_theta_derivative(double theta, double dp_dtheta, const Pole& pole) {
  const double offset = -std::sin(theta) * pole.value.imag() - std::cos(theta) * pole.value.real();
  return pole.is_finite() ? dp_dtheta + offset : offset;
}

CurveQuantities curve_quantities(const CurveSample& curve, std::size_t index, Complex a) {
  const Complex prev = curve.points[neighbour(curve, index, -1)];
  const Complex next = curve.points[neighbour(curve, index, +1)];
  const Complex chord = next - prev;
  if (std::abs(chord) == 0.0) {
    throw Error(ErrorCode::DegenerateTangent, "curve_quantities: neighbouring samples coincide");
  }
  const Complex tangent = chord / std::abs(chord);
  const Complex rel = curve.points[index] - a;
  CurveQuantities q;
  q.r = std::abs(rel);
  q.p = -rel.imag() * tangent.real() + rel.real() * tangent.imag();
  q.pc = rel.real() * tangent.real() + rel.imag() * tangent.imag();
  q.theta = wrap_angle(std::arg(tangent));
  return q;
}

double curve_pedal_theta_derivative(const CurveSample& curve, std::size_t index, Complex a) {
  const CurveQuantities before = curve_quantities(curve, neighbour(curve, index, -1), a);
  const CurveQuantities after = curve_quantities(curve, neighbour(curve, index, +1), a);
  const double dtheta = unwrap_difference(after.theta - before.theta);
  if (dtheta == 0.0) {
    throw Error(ErrorCode::DegenerateTangent, "curve_pedal_theta_derivative: zero curvature");
  }
  return (after.p - before.p) / dtheta;
}

Complex envelope_point(double theta, double p, double dp_dtheta) {
  const double s = std::sin(theta), c = std::cos(theta);
  return {p * s + dp_dtheta * c, -p * c + dp_dtheta * s};
}

bool colinear(Complex a, Complex b, Complex c) {
  const double area = 0.5 * std::abs(((b - a) * std::conj(c - a)).imag());
  const double span = std::max({std::abs(b - a), std::abs(c - a), std::abs(c - b)});
  return area <= 1e-12 * span * span;
}

double triangulate_coval(Complex a, Complex b, Complex c, Complex d,
                         const std::array<double, 3>& pedals) {
  if (!colinear(a, b, c)) return affine_combination({a, b, c}, pedals, d);

  // Colinear poles: pick the farthest pair and use the 3x3 identity.
  const std::array<Complex, 3> z{a, b, c};
  std::size_t u = 0, v = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      if (std::abs(z[i] - z[j]) > best) {
        best = std::abs(z[i] - z[j]);
        u = i;
        v = j;
      }
  if (best == 0.0) {
    if (d == a) return pedals[0];
    throw Error(ErrorCode::ColinearPoles, "triangulate_coval: all poles coincide");
  }
  if (!colinear(z[u], z[v], d)) {
    throw Error(ErrorCode::ColinearPoles, "triangulate_coval: poles are colinear and d is off their line");
  }
  // The 3x3 identity (rows value, 1, z) is linear interpolation along the line.
  const Complex e = z[v] - z[u];
  const double t = ((d - z[u]) * std::conj(e)).real() / std::norm(e);
  return pedals[u] + t * (pedals[v] - pedals[u]);
}

double triangulate_coval(Complex a, Complex b, Complex c, Complex d, const TangentLine& line) {
  return triangulate_coval(a, b, c, d, {pedal_of(line, a), pedal_of(line, b), pedal_of(line, c)});
}

double triangulate_oval(Complex a, Complex b, Complex c, Complex d,
                        const std::array<double, 3>& squared_distances) {
  if (colinear(a, b, c)) {
    throw Error(ErrorCode::ColinearPoles, "triangulate_oval: poles a, b, c are colinear");
  }
  // r(w)^2 - |w|^2 is affine in w, which is what the 5x5 identity states.
  const std::array<Complex, 3> z{a, b, c};
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) v[i] = squared_distances[i] - std::norm(z[i]);
  return affine_combination(z, v, d) + std::norm(d);
}

double triangulate_oval(Complex a, Complex b, Complex c, Complex d, Complex z) {
  return triangulate_oval(a, b, c, d, {std::norm(z - a), std::norm(z - b), std::norm(z - c)});
}

}  // namespace covals
