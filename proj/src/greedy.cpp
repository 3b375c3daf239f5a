#include "covals/greedy.hpp"

#include <algorithm>
#include <cmath>

#include "covals/error.hpp"

namespace covals {

namespace {

// Presence floor relative to the cleanup tolerance.
constexpr double kPresenceFloor = 1e-4;

double frobenius_scale(const CMatrix& a) {
  const double s = a.frobenius_norm();
  return s > 0.0 ? s : 1.0;
}

// det(xI - yA* - zA) for a matrix of unit Frobenius norm, from a 2-D DFT of
// samples at roots of unity. Exact up to rounding since each of y, z has
// degree <= n.
HomoTriPoly normalized_det_poly(const CMatrix& a_hat) {
  const int n = a_hat.size();
  const int grid = n + 1;
  const CMatrix adj = a_hat.adjoint();
  std::vector<CVector> samples(static_cast<std::size_t>(grid), CVector(static_cast<std::size_t>(grid)));
  for (int u = 0; u < grid; ++u) {
    const Complex y = std::polar(1.0, 2.0 * kPi * u / grid);
    for (int v = 0; v < grid; ++v) {
      const Complex z = std::polar(1.0, 2.0 * kPi * v / grid);
      samples[u][v] = determinant(CMatrix::identity(n) - y * adj - z * a_hat);
    }
  }

  HomoTriPoly f(n);
  double kept = 0.0, dropped = 0.0;
  for (int j = 0; j < grid; ++j) {
    for (int k = 0; k < grid; ++k) {
      Complex c{};
      for (int u = 0; u < grid; ++u)
        for (int v = 0; v < grid; ++v)
          c += samples[u][v] * std::polar(1.0, -2.0 * kPi * ((j * u + k * v) % grid) / grid);
      c /= static_cast<double>(grid * grid);
      if (j + k <= n) {
        f.set_coeff(j, k, c);
        kept = std::max(kept, std::abs(c));
      } else {
        dropped = std::max(dropped, std::abs(c));
      }
    }
  }
  // Monomials with j + k > n cannot occur; their size measures the aliasing.
  if (dropped > 1e-8 * std::max(1.0, kept)) {
    throw Error(ErrorCode::IllConditionedInterpolation, "det_poly3: interpolation residual too large");
  }
  if (f.symmetry_residual() > 1e-10 * std::max(1.0, f.max_abs_coeff())) {
    throw Error(ErrorCode::IllConditionedInterpolation, "det_poly3: conjugate symmetry violated");
  }
  f.symmetrize();
  return f;
}

HomoTriPoly rescale(const HomoTriPoly& f, double s) {
  HomoTriPoly out(f.degree());
  for (int j = 0; j <= f.degree(); ++j)
    for (int k = 0; j + k <= f.degree(); ++k) out.set_coeff(j, k, f.coeff(j, k) * std::pow(s, j + k));
  return out;
}

HomoTriPoly yz_power(int order) {
  HomoTriPoly p(2 * order);
  p.set_coeff(order, order, 1.0);
  return p;
}

HomoTriPoly level_polynomial(const ExpansionLevel& level, int m_total) {
  CVector finite, infinite;
  for (const auto& pole : level.poles) (pole.is_finite() ? finite : infinite).push_back(pole.value);
  return Complex{level.gamma} * (yz_power(level.order) * tri_linear_product(finite, infinite, m_total));
}

}  // namespace

double CovalExpansion::gamma(int order) const {
  const ExpansionLevel* l = level(order);
  return l ? l->gamma : 0.0;
}

const ExpansionLevel* CovalExpansion::level(int order) const {
  for (const auto& l : levels)
    if (l.order == order) return &l;
  return nullptr;
}

HomoTriPoly det_poly3(const CMatrix& a) {
  if (a.size() < 1) throw Error(ErrorCode::InvalidArgument, "det_poly3: empty matrix");
  const double s = frobenius_scale(a);
  return rescale(normalized_det_poly((1.0 / s) * a), s);
}

HomoTriPoly expansion_polynomial(const CovalExpansion& expansion) {
  HomoTriPoly total(expansion.n);
  for (const auto& level : expansion.levels)
    total = total + level_polynomial(level, expansion.n - 2 * level.order);
  return total;
}

CovalExpansion peel(const HomoTriPoly& f, const ExpansionTolerances& tolerances, const RootOptions& roots) {
  CovalExpansion out;
  out.n = f.degree();
  out.tolerances = tolerances;

  // Pole magnitude of the frame: max |f_jk / f_00|^(1/(j+k)).
  RootOptions framed = roots;
  const double f00 = std::abs(f.coeff(0, 0));
  if (f00 > 0.0)
    for (int j = 0; j <= f.degree(); ++j)
      for (int k = 0; j + k <= f.degree(); ++k)
        if (j + k > 0) framed.scale = std::max(framed.scale, std::pow(std::abs(f.coeff(j, k)) / f00, 1.0 / (j + k)));

  HomoTriPoly g = f;
  double tol = tolerances.cleanup;
  // Presence threshold for a level. The cleanup tolerance bounds what may be
  // discarded in a division; a genuine level can be smaller than that (small
  // gamma_k of random matrices), so termination uses the rounding floor.
  double floor = tolerances.cleanup * kPresenceFloor;
  int order = 0;

  while (true) {
    const int m = g.degree();
    if (g.is_zero(floor)) break;

    // Smallest k0 with a significant coefficient of x^{m-k0} z^{k0}.
    int k0 = -1;
    for (int k = 0; k <= m; ++k)
      if (std::abs(g.coeff(0, k)) > floor) {
        k0 = k;
        break;
      }

    if (k0 < 0) {
      if (m < 2) throw Error(ErrorCode::ResidualTooLarge, "greedy_expand: nonzero remainder of degree < 2");
      g = tri_div_yz(g, tol);
      out.vanished_orders.push_back(order);
      ++order;
      tol *= tolerances.cascade;
      floor *= tolerances.cascade;
      continue;
    }

    ExpansionLevel level;
    level.order = order;
    const int d = m - k0;  // number of finite poles
    CVector restriction(static_cast<std::size_t>(d + 1));
    for (int k = k0; k <= m; ++k) restriction[static_cast<std::size_t>(m - k)] = g.coeff(0, k);
    const Complex lead = g.coeff(0, k0);

    if (d >= 1)
      for (const auto& z : uni_roots(UniPoly(restriction), framed)) level.poles.push_back(Pole::finite(z));

    if (k0 == 0) {
      if (std::abs(lead.imag()) > tol * std::abs(lead) + tol) {
        throw Error(ErrorCode::ResidualTooLarge, "greedy_expand: level coefficient is not real");
      }
      level.gamma = lead.real();
    } else {
      // Directions at infinity: beta^{k0} = -lead.
      const Complex target = -lead;
      const Complex beta0 = std::polar(std::pow(std::abs(target), 1.0 / k0), std::arg(target) / k0);
      for (int l = 0; l < k0; ++l) level.poles.push_back(Pole::infinite(beta0 * std::polar(1.0, 2.0 * kPi * l / k0)));
      level.gamma = 1.0;
      out.has_infinite_poles = true;
    }

    g = g - level_polynomial(ExpansionLevel{0, level.gamma, level.poles}, m);
    out.levels.push_back(level);

    if (m < 2) {
      if (!g.is_zero(tol)) throw Error(ErrorCode::ResidualTooLarge, "greedy_expand: remainder does not vanish");
      break;
    }
    g = tri_div_yz(g, tol);
    ++order;
    tol *= tolerances.cascade;
    floor *= tolerances.cascade;
  }

  out.residual = (f - expansion_polynomial(out)).max_abs_coeff();
  if (out.residual > tolerances.reconstruction) {
    throw Error(ErrorCode::ResidualTooLarge, "greedy_expand: reconstruction residual too large");
  }
  return out;
}

CovalExpansion greedy_expand(const CMatrix& a, const ExpansionTolerances& tolerances,
                             const RootOptions& roots) {
  if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "greedy_expand: n must be at least 2");
  const double scale = frobenius_scale(a);
  CovalExpansion out = peel(normalized_det_poly((1.0 / scale) * a), tolerances, roots);
  out.scale = scale;
  for (auto& level : out.levels) {
    level.gamma *= std::pow(scale, 2 * level.order);
    for (auto& pole : level.poles) pole.value *= scale;
  }
  return out;
}

double expansion_eval(const CovalExpansion& expansion, const TangentLine& line) {
  double total = 0.0;
  for (const auto& level : expansion.levels) {
    double term = level.gamma * std::pow(0.25, level.order);
    for (const auto& pole : level.poles) term *= pedal_of(line, pole);
    total += term;
  }
  return total;
}

RemainderRoots remainder_real_rooted(const CMatrix& a, double theta) {
  const int n = a.size();
  if (n < 4) throw Error(ErrorCode::InvalidArgument, "remainder_real_rooted: n must be at least 4");
  const double sigma = frobenius_scale(a);
  const CVector eigs = eigenvalues(a);

  // Chebyshev nodes in u = p / sigma.
  const int count = n - 1;
  CMatrix vandermonde(count);
  CVector values(static_cast<std::size_t>(count));
  const TangentLine origin(theta, 0.0);
  double peak = 0.0;
  for (int i = 0; i < count; ++i) {
    const double u = std::cos(kPi * (2 * i + 1) / (2.0 * count));
    const double p = sigma * u;
    double prod = 1.0;
    for (const auto& l : eigs) prod *= p + pedal_of(origin, l);
    const double v = det_pedal(a, theta, p) - prod;
    values[static_cast<std::size_t>(i)] = v;
    peak = std::max(peak, std::abs(v));
    for (int k = 0; k < count; ++k) vandermonde(i, k) = std::pow(u, k);
  }
  if (peak <= 1e-10 * std::pow(sigma, n)) {
    throw Error(ErrorCode::DegenerateRemainder, "remainder_real_rooted: remainder vanishes (normal matrix)");
  }

  const CVector c = inverse(vandermonde).apply(values);
  RemainderRoots out;
  out.coefficients.resize(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.coefficients[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)].real() / std::pow(sigma, k);

  UniPoly q{out.coefficients};
  q.trim(1e-12);
  if (q.degree() < 1) throw Error(ErrorCode::DegenerateRemainder, "remainder_real_rooted: remainder is constant in p");
  out.roots = uni_roots(q);
  std::sort(out.roots.begin(), out.roots.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() > y.real() : x.imag() > y.imag();
  });
  for (const auto& z : out.roots)
    if (std::abs(z.imag()) <= 1e-7 * sigma) ++out.real_count;
  out.all_real = out.real_count == static_cast<int>(out.roots.size());
  return out;
}

bool classify_2normal(const CMatrix& a, double tol) {
  if (a.size() < 3) throw Error(ErrorCode::InvalidArgument, "classify_2normal: n must be at least 3");
  const CovalExpansion e = greedy_expand(a);
  for (const auto& level : e.levels) {
    if (level.order < 2) continue;
    const double normalized = std::abs(level.gamma) / std::pow(e.scale, 2 * level.order);
    if (normalized > tol * std::pow(10.0, level.order)) return false;
  }
  return true;
}

}  // namespace covals
