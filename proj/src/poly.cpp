#include "covals/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "covals/error.hpp"

namespace covals {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct HornerResult {
  Complex value;
  Complex derivative;
};

HornerResult horner_with_derivative(const CVector& c, Complex x) {
  Complex value = c.back();
  Complex deriv{};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    deriv = deriv * x + value;
    value = value * x + c[k];
  }
  return {value, deriv};
}

double magnitude(const CVector& c, double r) {
  double m = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) m = m * r + std::abs(*it);
  return m;
}

// Fujiwara's bound on the moduli of the roots of a monic polynomial.
double fujiwara_bound(const CVector& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  double bound = 0.0;
  for (int k = 1; k < n; ++k) {
    bound = std::max(bound, std::pow(std::abs(monic[n - k]), 1.0 / k));
  }
  bound = std::max(bound, std::pow(std::abs(monic[0]) / 2.0, 1.0 / n));
  return 2.0 * bound;
}

CVector solve_low_degree(const CVector& c) {
  if (c.size() == 2) return {-c[0] / c[1]};
  // Quadratic with the cancellation-free pairing of roots.
  const Complex a = c[2], b = c[1], cc = c[0];
  const Complex disc = std::sqrt(b * b - 4.0 * a * cc);
  const Complex q1 = -b + disc, q2 = -b - disc;
  const Complex q = std::abs(q1) >= std::abs(q2) ? q1 : q2;
  if (q == Complex{}) return {Complex{}, Complex{}};
  return {q / (2.0 * a), 2.0 * cc / q};
}

CVector aberth(const CVector& monic, const RootOptions& options) {
  const int n = static_cast<int>(monic.size()) - 1;
  const double radius = std::max(fujiwara_bound(monic), std::numeric_limits<double>::min());
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);

  CVector z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * kPi * k / n + 0.4 + 0.05 * jitter(rng);
    z[k] = std::polar(radius * (0.5 + 0.05 * jitter(rng)), angle);
  }

  std::vector<char> done(n, 0);
  const int restart_at = options.max_iterations / 2;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (iter == restart_at) {
      for (int k = 0; k < n; ++k) {
        if (!done[k]) z[k] += std::polar(1e-3 * radius, 2.0 * kPi * jitter(rng));
      }
    }
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [value, deriv] = horner_with_derivative(monic, z[k]);
      const double bound = 4.0 * n * kEps * magnitude(monic, std::abs(z[k]));
      if (std::abs(value) <= bound) {
        done[k] = 1;
        continue;
      }
      all_done = false;
      if (deriv == Complex{}) {
        z[k] += std::polar(1e-6 * radius, 2.0 * kPi * jitter(rng));
        continue;
      }
      const Complex newton = value / deriv;
      Complex repulsion{};
      for (int j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      const Complex step = newton / (1.0 - newton * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[k])) done[k] = 1;
    }
    if (all_done) return z;
  }
  // Out of iterations: accept only if every residual is within tolerance.
  for (int k = 0; k < n; ++k) {
    const auto [value, deriv] = horner_with_derivative(monic, z[k]);
    (void)deriv;
    if (std::abs(value) > options.tol * magnitude(monic, std::abs(z[k]))) {
      throw Error(ErrorCode::NonConvergence,
                  "Aberth iteration did not converge after " +
                      std::to_string(options.max_iterations) + " iterations");
    }
  }
  return z;
}

// Groups of root indices connected by gaps <= threshold.
std::vector<std::vector<std::size_t>> cluster(const CVector& roots, double threshold) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(roots[i] - roots[j]) <= threshold) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == n) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

}  // namespace

UniPoly UniPoly::from_roots(std::span<const Complex> roots) {
  CVector c{Complex{1.0}};
  for (const Complex& r : roots) {
    CVector next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return UniPoly(std::move(c));
}

Complex UniPoly::operator()(Complex x) const noexcept {
  Complex v{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
  return v;
}

double UniPoly::magnitude_at(Complex x) const noexcept {
  return magnitude(coeffs_, std::abs(x));
}

double UniPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly{};
  CVector d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return UniPoly(std::move(d));
}

UniPoly& UniPoly::trim(double rel_tol) {
  const double cut = rel_tol * max_abs_coeff();
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
  return *this;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  CVector c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Complex{-1.0} * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly{};
  CVector c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(Complex s, const UniPoly& a) {
  CVector c = a.coeffs_;
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

CVector uni_roots(const UniPoly& p, const RootOptions& options) {
  CVector out;
  for (const auto& c : uni_roots_clustered(p, options)) {
    out.insert(out.end(), static_cast<std::size_t>(c.multiplicity), c.value);
  }
  return out;
}

std::vector<RootCluster> uni_roots_clustered(const UniPoly& p, const RootOptions& options) {
  if (p.degree() < 1) {
    throw Error(ErrorCode::InvalidArgument, "uni_roots: degree must be at least 1");
  }
  if (p.leading() == Complex{}) {
    throw Error(ErrorCode::InvalidArgument, "uni_roots: leading coefficient is zero");
  }
  const CVector& a = p.coeffs();
  std::size_t zeros = 0;
  while (a[zeros] == Complex{}) ++zeros;

  CVector monic(a.begin() + static_cast<std::ptrdiff_t>(zeros), a.end());
  const Complex lead = monic.back();
  for (auto& c : monic) c /= lead;

  CVector roots(zeros, Complex{});
  if (monic.size() == 2 || monic.size() == 3) {
    const CVector r = solve_low_degree(monic);
    roots.insert(roots.end(), r.begin(), r.end());
  } else if (monic.size() > 3) {
    const CVector r = aberth(monic, options);
    roots.insert(roots.end(), r.begin(), r.end());
  }

  // A root of multiplicity m scatters by eps^(1/m); merge within that radius
  // and keep a merge only if it does not change the coefficients.
  double scale = options.scale;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  const int degree = p.degree();
  const double radius =
      std::max(options.cluster_rel, 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / degree)) * scale;
  const std::vector<std::vector<std::size_t>> groups = cluster(roots, radius);

  CVector lead_monic(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) lead_monic[k] = a[k] / p.leading();
  double coeff_scale = 1.0;
  for (const auto& c : lead_monic) coeff_scale = std::max(coeff_scale, std::abs(c));

  std::vector<RootCluster> out;
  for (const auto& group : groups) {
    const int m = static_cast<int>(group.size());
    if (m < 2) {
      out.push_back({roots[group[0]], 1});
      continue;
    }
    Complex mean{};
    for (std::size_t i : group) mean += roots[i];
    mean /= static_cast<double>(m);

    // Newton on the (m-1)-th derivative, where the multiple root is simple.
    UniPoly q = p;
    for (int i = 1; i < m; ++i) q = q.derivative();
    const UniPoly dq = q.derivative();
    Complex z = mean;
    for (int it = 0; it < 20 && z != Complex{}; ++it) {
      const Complex d = dq(z);
      if (d == Complex{}) break;
      const Complex step = q(z) / d;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    if (std::isfinite(z.real()) && std::isfinite(z.imag()) && std::abs(z - mean) <= radius) mean = z;

    // Keep the merge only if the rebuilt coefficients are unchanged.
    CVector merged = roots;
    for (std::size_t i : group) merged[i] = mean;
    const CVector rebuilt = UniPoly::from_roots(merged).coeffs();
    double gap = 0.0;
    for (std::size_t k = 0; k < rebuilt.size(); ++k) gap = std::max(gap, std::abs(rebuilt[k] - lead_monic[k]));
    if (gap <= 1e-12 * coeff_scale) {
      out.push_back({mean, m});
    } else {
      for (std::size_t i : group) out.push_back({roots[i], 1});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

HomoTriPoly::HomoTriPoly(int degree)
    : degree_(degree),
      coeffs_(static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 1)) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "HomoTriPoly: negative degree");
}

std::size_t HomoTriPoly::index(int j, int k) const {
  if (j < 0 || k < 0 || j + k > degree_) {
    throw Error(ErrorCode::InvalidArgument, "HomoTriPoly: monomial index out of range");
  }
  return static_cast<std::size_t>(j) * static_cast<std::size_t>(degree_ + 1) +
         static_cast<std::size_t>(k);
}

Complex HomoTriPoly::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j + k > degree_) return Complex{};
  return coeffs_[index(j, k)];
}

void HomoTriPoly::set_coeff(int j, int k, Complex value) { coeffs_[index(j, k)] = value; }
void HomoTriPoly::add_coeff(int j, int k, Complex value) { coeffs_[index(j, k)] += value; }

Complex HomoTriPoly::operator()(Complex x, Complex y, Complex z) const {
  // Nested Horner: in z for each y-power, then in y, with x^(m-j-k) folded in
  // by evaluating the dehomogenized form scaled back by x powers.
  Complex total{};
  for (int j = degree_; j >= 0; --j) {
    Complex inner{};
    for (int k = degree_ - j; k >= 0; --k) {
      inner = inner * z + coeff(j, k) * std::pow(x, degree_ - j - k);
    }
    total = total * y + inner;
  }
  return total;
}

double HomoTriPoly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool HomoTriPoly::is_zero(double abs_tol) const noexcept { return max_abs_coeff() <= abs_tol; }

double HomoTriPoly::symmetry_residual() const noexcept {
  double r = 0.0;
  for (int j = 0; j <= degree_; ++j) {
    for (int k = 0; j + k <= degree_; ++k) {
      r = std::max(r, std::abs(std::conj(coeff(j, k)) - coeff(k, j)));
    }
  }
  return r;
}

void HomoTriPoly::symmetrize() {
  for (int j = 0; j <= degree_; ++j) {
    for (int k = j; j + k <= degree_; ++k) {
      const Complex avg = 0.5 * (coeff(j, k) + std::conj(coeff(k, j)));
      set_coeff(j, k, avg);
      set_coeff(k, j, std::conj(avg));
    }
  }
}

HomoTriPoly HomoTriPoly::finite_factor(Complex pole) {
  HomoTriPoly f(1);
  f.set_coeff(0, 0, 1.0);
  f.set_coeff(1, 0, -std::conj(pole));
  f.set_coeff(0, 1, -pole);
  return f;
}

HomoTriPoly HomoTriPoly::infinite_factor(Complex direction) {
  HomoTriPoly f(1);
  f.set_coeff(1, 0, -std::conj(direction));
  f.set_coeff(0, 1, -direction);
  return f;
}

HomoTriPoly HomoTriPoly::constant(Complex value) {
  HomoTriPoly f(0);
  f.set_coeff(0, 0, value);
  return f;
}

HomoTriPoly operator+(const HomoTriPoly& a, const HomoTriPoly& b) {
  if (a.degree_ != b.degree_) {
    throw Error(ErrorCode::InvalidArgument, "HomoTriPoly: adding different degrees");
  }
  HomoTriPoly c = a;
  for (std::size_t i = 0; i < c.coeffs_.size(); ++i) c.coeffs_[i] += b.coeffs_[i];
  return c;
}

HomoTriPoly operator-(const HomoTriPoly& a, const HomoTriPoly& b) { return a + Complex{-1.0} * b; }

HomoTriPoly operator*(const HomoTriPoly& a, const HomoTriPoly& b) {
  HomoTriPoly c(a.degree_ + b.degree_);
  for (int j1 = 0; j1 <= a.degree_; ++j1) {
    for (int k1 = 0; j1 + k1 <= a.degree_; ++k1) {
      const Complex ca = a.coeff(j1, k1);
      if (ca == Complex{}) continue;
      for (int j2 = 0; j2 <= b.degree_; ++j2) {
        for (int k2 = 0; j2 + k2 <= b.degree_; ++k2) {
          c.add_coeff(j1 + j2, k1 + k2, ca * b.coeff(j2, k2));
        }
      }
    }
  }
  return c;
}

HomoTriPoly operator*(Complex s, const HomoTriPoly& a) {
  HomoTriPoly c = a;
  for (auto& v : c.coeffs_) v *= s;
  return c;
}

HomoTriPoly tri_linear_product(std::span<const Complex> finite,
                               std::span<const Complex> infinite, int m_total) {
  if (static_cast<int>(finite.size() + infinite.size()) != m_total) {
    throw Error(ErrorCode::InvalidArgument, "tri_linear_product: factor count mismatch");
  }
  HomoTriPoly product = HomoTriPoly::constant(1.0);
  for (const Complex& a : finite) product = product * HomoTriPoly::finite_factor(a);
  for (const Complex& b : infinite) product = product * HomoTriPoly::infinite_factor(b);
  return product;
}

HomoTriPoly tri_div_yz(const HomoTriPoly& p, double tol) {
  const int m = p.degree();
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "tri_div_yz: degree must be at least 2");
  const double limit = tol * std::max(1.0, p.max_abs_coeff());
  for (int t = 0; t <= m; ++t) {
    const double dropped = std::max(std::abs(p.coeff(0, t)), std::abs(p.coeff(t, 0)));
    if (dropped > limit) {
      throw Error(ErrorCode::NotDivisible,
                  "tri_div_yz: coefficient " + std::to_string(dropped) +
                      " off the yz-divisible part exceeds " + std::to_string(limit));
    }
  }
  HomoTriPoly q(m - 2);
  for (int j = 0; j <= m - 2; ++j) {
    for (int k = 0; j + k <= m - 2; ++k) q.set_coeff(j, k, p.coeff(j + 1, k + 1));
  }
  return q;
}

UniPoly tri_restrict_x(const HomoTriPoly& p) {
  const int m = p.degree();
  CVector c(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) c[static_cast<std::size_t>(m - k)] = p.coeff(0, k);
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  return UniPoly(std::move(c));
}

std::vector<CVector> tri_restrict_yz(const HomoTriPoly& p) {
  const int m = p.degree();
  std::vector<CVector> table(static_cast<std::size_t>(m + 1), CVector(static_cast<std::size_t>(m + 1)));
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; j + k <= m; ++k) table[j][k] = p.coeff(j, k);
  }
  return table;
}

}  // namespace covals
