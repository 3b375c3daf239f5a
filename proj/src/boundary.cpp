#include "covals/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "covals/error.hpp"

namespace covals {

namespace {

constexpr double kFlatGap = 1e-10;

Complex rayleigh(const CMatrix& a, const CVector& u) {
  const CVector au = a.apply(u);
  Complex num{};
  double den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += std::conj(u[i]) * au[i];
    den += std::norm(u[i]);
  }
  return num / den;
}

double eigen_residual(const CMatrix& h, const CVector& v, double lambda) {
  const CVector hv = h.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::norm(hv[i] - lambda * v[i]);
  return std::sqrt(s);
}

// z-component of (a - o) x (b - o).
double cross(Complex o, Complex a, Complex b) { return (std::conj(a - o) * (b - o)).imag(); }

double polygon_area(const std::vector<Complex>& pts) {
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Complex a = pts[i], b = pts[(i + 1) % pts.size()];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * std::abs(area);
}

}  // namespace

Support support(const CMatrix& a, double theta) {
  const int n = a.size();
  const CMatrix rotated = std::polar(1.0, -theta) * a;
  const CMatrix h = Complex{-1.0} * rotated.skew_hermitian_part();
  const HermitianEigen eig = hermitian_eig(h);

  Support s;
  s.p = eig.values.back();
  s.point = rayleigh(a, eig.vectors.back());
  s.residual = eigen_residual(h, eig.vectors.back(), s.p);
  s.edge_start = s.edge_end = s.point;

  const double scale = std::max(1.0, a.frobenius_norm());
  int top = 1;
  while (top < n && s.p - eig.values[static_cast<std::size_t>(n - 1 - top)] < kFlatGap * scale) ++top;
  if (top < 2) return s;

  // Compress A to the top eigenspace; the boundary along the line is the
  // range of Re(e^{-i theta} z) over that compression.
  std::vector<CVector> basis(eig.vectors.end() - top, eig.vectors.end());
  CMatrix b(top);
  for (int i = 0; i < top; ++i) {
    const CVector av = a.apply(basis[static_cast<std::size_t>(i)]);
    for (int j = 0; j < top; ++j) {
      Complex dot{};
      for (int r = 0; r < n; ++r) dot += std::conj(basis[static_cast<std::size_t>(j)][r]) * av[r];
      b(j, i) = dot;
    }
  }
  const HermitianEigen along = hermitian_eig((std::polar(1.0, -theta) * b).hermitian_part());
  auto lift = [&](const CVector& c) {
    CVector u(static_cast<std::size_t>(n));
    for (int i = 0; i < top; ++i)
      for (int r = 0; r < n; ++r) u[r] += c[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(i)][r];
    return u;
  };
  const double extent = along.values.back() - along.values.front();
  if (extent <= kFlatGap * scale) return s;
  s.flat = true;
  s.edge_start = rayleigh(a, lift(along.vectors.front()));
  s.edge_end = rayleigh(a, lift(along.vectors.back()));
  s.point = s.edge_start;
  return s;
}

BoundaryTrace trace_boundary(const CMatrix& a, int n_samples, std::string matrix_id) {
  if (n_samples < 16) throw Error(ErrorCode::InvalidArgument, "trace_boundary: need at least 16 samples");
  BoundaryTrace trace;
  trace.matrix_id = std::move(matrix_id);
  trace.scale = std::max(1.0, a.frobenius_norm());
  for (int i = 0; i < n_samples; ++i) {
    const double theta = 2.0 * kPi * i / n_samples;
    const Support s = support(a, theta);
    trace.samples.push_back({theta, s.p, s.edge_start, s.residual});
    if (s.flat) trace.samples.push_back({theta, s.p, s.edge_end, s.residual});
  }

  const std::vector<Complex> pts = trace_points(trace);
  double perimeter = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) perimeter += std::abs(pts[(i + 1) % pts.size()] - pts[i]);
  if (perimeter <= kFlatGap * trace.scale) {
    trace.shape = RangeShape::Point;
  } else if (polygon_area(pts) <= kFlatGap * trace.scale * perimeter) {
    trace.shape = RangeShape::Segment;
  }
  return trace;
}

bool psd_certificate(const CMatrix& a, const TangentLine& line, double tol) {
  const CMatrix m = pedal_matrix(a, line.theta, line.p);
  const int n = m.size();
  const double scale = std::max(1.0, m.frobenius_norm());
  for (int k = 1; k <= n; ++k) {
    CMatrix lead(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead(i, j) = m(i, j);
    if (determinant(lead).real() < -tol * std::pow(scale, k)) return false;
  }
  return true;
}

double halfplane_violation(const BoundaryTrace& trace) {
  double worst = 0.0;
  for (const auto& line : trace.samples) {
    const TangentLine l(line.theta, line.p);
    for (const auto& s : trace.samples) worst = std::max(worst, -pedal_of(l, s.point));
  }
  return worst;
}

std::vector<Complex> trace_points(const BoundaryTrace& trace) {
  std::vector<Complex> pts;
  pts.reserve(trace.samples.size());
  for (const auto& s : trace.samples) pts.push_back(s.point);
  return pts;
}

std::vector<Complex> convex_hull(std::vector<Complex> points) {
  std::sort(points.begin(), points.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;

  // Andrew's monotone chain.
  std::vector<Complex> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_segment_distance(Complex z, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

double point_polyline_distance(Complex z, const std::vector<Complex>& closed) {
  if (closed.empty()) throw Error(ErrorCode::InvalidArgument, "point_polyline_distance: empty polyline");
  if (closed.size() == 1) return std::abs(z - closed.front());
  double best = std::abs(z - closed.front());
  for (std::size_t i = 0; i < closed.size(); ++i)
    best = std::min(best, point_segment_distance(z, closed[i], closed[(i + 1) % closed.size()]));
  return best;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (std::size_t i = 0; i < from.size(); ++i) {
      const Complex mid = 0.5 * (from[i] + from[(i + 1) % from.size()]);
      worst = std::max({worst, point_polyline_distance(from[i], to), point_polyline_distance(mid, to)});
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace covals
