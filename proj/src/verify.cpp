#include "covals/verify.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "covals/boundary.hpp"
#include "covals/error.hpp"
#include "covals/greedy.hpp"
#include "covals/spectrum.hpp"

namespace covals {

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CheckResult check(std::string name, double value, double bound) {
  return {std::move(name), value <= bound, false, "value " + sci(value) + " bound " + sci(bound)};
}

CheckResult skipped(std::string name, std::string why) { return {std::move(name), true, true, std::move(why)}; }

}  // namespace

double multiset_distance(CVector a, CVector b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  while (!a.empty()) {
    std::size_t bi = 0, bj = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        if (std::abs(a[i] - b[j]) < best) {
          best = std::abs(a[i] - b[j]);
          bi = i;
          bj = j;
        }
    worst = std::max(worst, best);
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(bi));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return worst;
}

double gamma2_closed_form(const CMatrix& a) {
  if (a.size() != 4) throw Error(ErrorCode::InvalidArgument, "gamma2_closed_form: 4x4 matrix required");
  const SpectralData sd = spectral_data(a);
  const CMatrix m = inverse(a) * a.adjoint();
  const Complex tr = m.trace();
  const Complex e2_star = 0.5 * (tr * tr - (m * m).trace());
  CVector ratios;
  for (const auto& l : sd.eigenvalues) ratios.push_back(std::conj(l) / l);
  const Complex e2_bar = elem_sym(ratios, 2);
  const SecondarySpectrum s = secondary_values(a);
  if (s.values.size() != 2) throw Error(ErrorCode::InvalidArgument, "gamma2_closed_form: matrix is normal");
  const Complex cp = s.values[0], cm = s.values[1];
  const Complex v = determinant(a) * (e2_star - e2_bar) + s.t1 * (cp * std::conj(cm) + std::conj(cp) * cm);
  return v.real();
}

std::vector<CheckResult> verify_matrix(const CMatrix& a, const VerifyOptions& options) {
  std::vector<CheckResult> out;
  const int n = a.size();
  const double sigma = std::max(a.frobenius_norm(), 1e-300);
  const double scale = std::max(1.0, sigma);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi), unit(-1.0, 1.0);

  const SpectralData sd = spectral_data(a);
  const CVector& eigs = sd.eigenvalues;

  {
    const UniPoly cp = char_poly(a);
    double worst = 0.0;
    for (const auto& l : eigs) worst = std::max(worst, std::abs(cp(l)) / std::max(1.0, cp.magnitude_at(l)));
    out.push_back(check("char_poly vanishes at eigenvalues", worst, 1e-8));
  }
  {
    const Complex t1 = t_k(a, 1, eigs);
    out.push_back(check("t1 real and non-negative", std::max(-t1.real(), std::abs(t1.imag())), 1e-10 * sigma * sigma));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const TangentLine line(angle(rng), 2.0 * sigma * unit(rng));
      const double lhs = pedal_matrix(a, line.theta, line.p).trace().real();
      const double rhs = n * pedal_of(line, a.trace() / static_cast<double>(n));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    out.push_back(check("trace of pedal matrix", worst, 1e-10 * scale));
  }
  {
    const HomoTriPoly f = det_poly3(a);
    out.push_back(check("det polynomial leading coefficient", std::abs(f.coeff(0, 0) - 1.0), 1e-10));
    out.push_back(check("det polynomial conjugate symmetry", f.symmetry_residual(), 1e-10 * std::max(1.0, f.max_abs_coeff())));
  }

  CovalExpansion e;
  bool expanded = false;
  if (n >= 2) {
    try {
      e = greedy_expand(a, {options.tol});
      expanded = true;
      double worst = 0.0;
      for (int i = 0; i < options.lines; ++i) {
        const TangentLine line(angle(rng), 2.0 * sigma * unit(rng));
        worst = std::max(worst, std::abs(det_pedal(a, line.theta, line.p) - expansion_eval(e, line)));
      }
      out.push_back(check("expansion matches det p(A)", worst, 1e-7 * std::pow(sigma, n)));
      CVector level0;
      for (const auto& p : e.levels.front().poles) level0.push_back(p.value);
      out.push_back(check("level 0 poles are the eigenvalues", multiset_distance(level0, eigs), 1e-7 * scale));
      if (e.has_infinite_poles) {
        out.push_back({"poles at infinity", true, false, "expansion uses directions at infinity"});
      }
    } catch (const Error& err) {
      out.push_back({"greedy expansion", false, false, std::string(err.name()) + ": " + err.what()});
    }
  } else {
    out.push_back(skipped("greedy expansion", "n < 2"));
  }

  {
    bool inside = true;
    for (const auto& l : eigs) inside = inside && in_numerical_range(a, l, options.tol);
    out.push_back({"eigenvalues inside W(A)", inside, false, ""});
  }

  if (n >= 3) {
    const SecondarySpectrum s = secondary_values(a);
    if (s.normal_flag) {
      out.push_back(check("normal matrix has one level", expanded ? static_cast<double>(e.levels.size()) - 1.0 : 1.0, 0.0));
    } else {
      out.push_back({"secondary centroid inside W(A)", in_numerical_range(a, s.centroid, options.tol), false, ""});
      if (expanded) {
        const ExpansionLevel* l1 = e.level(1);
        if (!l1) {
          out.push_back({"level 1 present", false, false, "no order-1 level"});
        } else {
          out.push_back(check("level 1 gamma = -t1", std::abs(l1->gamma + s.t1) / s.t1, 1e-8));
          CVector poles;
          for (const auto& p : l1->poles) poles.push_back(p.value);
          out.push_back(check("level 1 poles are the secondary values", multiset_distance(poles, s.values), 1e-7 * scale));
        }
      }
      if (n == 3) {
        const Complex chi = a.trace() - t_k(a, 2, eigs) / s.t1;
        out.push_back(check("n = 3 secondary value from t1, t2", std::abs(chi - s.values.front()), 1e-10 * scale));
        double worst = 0.0;
        for (const auto& l : eigs) {
          if (std::abs(l - s.values.front()) <= 1e-9 * scale) continue;
          const TangentLine line = TangentLine::through(s.values.front(), l);
          worst = std::max(worst, std::abs(det_pedal(a, line.theta, line.p)));
        }
        out.push_back(check("lines from the secondary value to eigenvalues are tangent", worst, 1e-7 * std::pow(scale, n)));
      }
      if (n == 4 && expanded && std::abs(determinant(a)) > 1e-10 * std::pow(sigma, n)) {
        const double closed = gamma2_closed_form(a);
        const double greedy = e.gamma(2);
        out.push_back(check("n = 4 order-2 coefficient closed form", std::abs(closed - greedy) / std::max(1.0, std::abs(closed)), 1e-7));
      }
    }
  }

  {
    const BoundaryTrace trace = trace_boundary(a, options.theta_samples);
    double det_worst = 0.0;
    bool psd = true;
    for (const auto& s : trace.samples) {
      det_worst = std::max(det_worst, std::abs(det_pedal(a, s.theta, s.p)));
      psd = psd && psd_certificate(a, TangentLine(s.theta, s.p), options.tol);
    }
    out.push_back(check("boundary lines satisfy det p(A) = 0", det_worst, 1e-8 * std::pow(scale, n)));
    out.push_back({"boundary lines have PSD pedal matrix", psd, false, ""});
    out.push_back(check("boundary inside all supporting half-planes", halfplane_violation(trace), 1e-8 * scale));
  }

  if (n >= 4) {
    try {
      const RemainderRoots r = remainder_real_rooted(a, angle(rng));
      out.push_back({"remainder roots", true, false,
                     std::to_string(r.real_count) + " of " + std::to_string(r.roots.size()) + " real"});
    } catch (const Error& err) {
      if (err.code() != ErrorCode::DegenerateRemainder) throw;
      out.push_back(skipped("remainder roots", "normal matrix"));
    }
  }
  return out;
}

}  // namespace covals
