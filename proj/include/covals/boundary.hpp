#pragma once

#include <string>
#include <vector>

#include "covals/matrix.hpp"
#include "covals/pedal.hpp"

namespace covals {

/// Supporting line of W(A) with tangential angle theta.
struct Support {
  double p = 0.0;          // max eigenvalue of -Im(e^{-i theta} A)
  Complex point{};         // Rayleigh quotient of the top eigenvector
  double residual = 0.0;   // ||H v - p v|| for that eigenvector
  bool flat = false;       // top eigenspace has dimension >= 2
  Complex edge_start{};    // extreme Rayleigh points of a flat edge, in
  Complex edge_end{};      // counterclockwise order; equal to point otherwise
};

Support support(const CMatrix& a, double theta);

struct BoundarySample {
  double theta = 0.0;
  double p = 0.0;
  Complex point{};
  double residual = 0.0;
};

enum class RangeShape { Region, Segment, Point };

/// Counterclockwise polyline of boundary points on a uniform theta grid. Flat
/// edges contribute both endpoints under the same theta.
struct BoundaryTrace {
  std::vector<BoundarySample> samples;
  std::string matrix_id;
  RangeShape shape = RangeShape::Region;
  double scale = 1.0;  // max(1, ||A||_F)
};

/// n_samples >= 16.
BoundaryTrace trace_boundary(const CMatrix& a, int n_samples, std::string matrix_id = {});

/// True when every leading principal minor of p(A) is >= -tol * max(1, ||p(A)||)^i.
bool psd_certificate(const CMatrix& a, const TangentLine& line, double tol = 1e-8);

/// Largest violation max(0, -p_j(z_i)) of any traced point against any sampled
/// supporting half-plane.
double halfplane_violation(const BoundaryTrace& trace);

// Plane geometry helpers.

/// Convex hull, counterclockwise, without repeated or colinear vertices.
std::vector<Complex> convex_hull(std::vector<Complex> points);

double point_segment_distance(Complex z, Complex a, Complex b);

/// Distance from z to a closed polyline (a single point or a segment when it
/// has one or two vertices).
double point_polyline_distance(Complex z, const std::vector<Complex>& closed);

/// Symmetric Hausdorff distance between two closed polylines, evaluated at
/// vertices and edge midpoints.
double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

std::vector<Complex> trace_points(const BoundaryTrace& trace);

}  // namespace covals
