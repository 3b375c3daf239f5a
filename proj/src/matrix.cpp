#include "covals/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "covals/error.hpp"

namespace covals {

CMatrix::CMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "CMatrix: dimension must be at least 1");
}

CMatrix::CMatrix(int n, CVector entries) : n_(n), data_(std::move(entries)) {
  if (n < 1 || data_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "CMatrix: entries do not form a square matrix");
  }
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::InvalidArgument, "CMatrix: non-finite entry");
    }
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  n_ = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) {
      throw Error(ErrorCode::InvalidArgument, "CMatrix: rows must form a square matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (n_ < 1) throw Error(ErrorCode::InvalidArgument, "CMatrix: dimension must be at least 1");
}

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.n_; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = std::conj((*this)(j, i));
  return m;
}

CMatrix CMatrix::hermitian_part() const { return 0.5 * (*this + adjoint()); }

CMatrix CMatrix::skew_hermitian_part() const {
  return Complex{0.0, -0.5} * (*this - adjoint());
}

CMatrix CMatrix::trailing_block(int k) const {
  CMatrix m(n_ - k);
  for (int i = k; i < n_; ++i)
    for (int j = k; j < n_; ++j) m(i - k, j - k) = (*this)(i, j);
  return m;
}

Complex CMatrix::trace() const noexcept {
  Complex t{};
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

CVector CMatrix::apply(std::span<const Complex> v) const {
  CVector out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    Complex s{};
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  CMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  const int n = a.n_;
  CMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CMatrix operator*(Complex s, const CMatrix& a) {
  CMatrix c = a;
  for (auto& v : c.data_) v *= s;
  return c;
}

// ---------------------------------------------------------------------------

namespace {

struct LU {
  CMatrix lu;
  std::vector<int> perm;
  int sign = 1;
  bool singular = false;
};

LU lu_decompose(const CMatrix& a) {
  const int n = a.size();
  LU f{a, std::vector<int>(static_cast<std::size_t>(n)), 1, false};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  CMatrix& m = f.lu;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(m(col, col));
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m(r, col)) > best) {
        best = std::abs(m(r, col));
        pivot = r;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      continue;
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
      std::swap(f.perm[static_cast<std::size_t>(col)], f.perm[static_cast<std::size_t>(pivot)]);
      f.sign = -f.sign;
    }
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = m(r, col) / m(col, col);
      m(r, col) = factor;
      for (int j = col + 1; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return f;
}

}  // namespace

Complex determinant(const CMatrix& a) {
  const LU f = lu_decompose(a);
  if (f.singular) return Complex{};
  Complex d = static_cast<double>(f.sign);
  for (int i = 0; i < a.size(); ++i) d *= f.lu(i, i);
  return d;
}

CMatrix inverse(const CMatrix& a) {
  const int n = a.size();
  const LU f = lu_decompose(a);
  if (f.singular) throw Error(ErrorCode::SingularMatrix, "inverse: matrix is singular");
  CMatrix inv(n);
  for (int col = 0; col < n; ++col) {
    CVector x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      Complex s = (f.perm[static_cast<std::size_t>(i)] == col) ? 1.0 : 0.0;
      for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
      Complex s = x[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[static_cast<std::size_t>(j)];
      x[static_cast<std::size_t>(i)] = s / f.lu(i, i);
    }
    for (int i = 0; i < n; ++i) inv(i, col) = x[static_cast<std::size_t>(i)];
  }
  return inv;
}

UniPoly char_poly(const CMatrix& a) {
  const int n = a.size();
  double scale = a.frobenius_norm();
  if (scale == 0.0) scale = 1.0;
  const CMatrix as = Complex{1.0 / scale} * a;

  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  CVector c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1.0;
  CMatrix m(n);
  for (int k = 1; k <= n; ++k) {
    m = as * m;
    for (int i = 0; i < n; ++i) m(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    c[static_cast<std::size_t>(n - k)] = -(as * m).trace() / static_cast<double>(k);
  }
  double factor = 1.0;
  for (int k = 1; k <= n; ++k) {
    factor *= scale;
    c[static_cast<std::size_t>(n - k)] *= factor;
  }
  return UniPoly(std::move(c));
}

CVector eigenvalues(const CMatrix& a, const RootOptions& options) {
  CVector eigs;
  if (a.size() == 1) {
    eigs = {a(0, 0)};
  } else {
    RootOptions framed = options;
    framed.scale = std::max(framed.scale, a.frobenius_norm());
    eigs = uni_roots(char_poly(a), framed);
  }
  double scale = 0.0;
  for (const auto& e : eigs) scale = std::max(scale, std::abs(e));
  if (scale == 0.0) scale = 1.0;
  auto key = [scale](Complex z) { return std::llround(std::abs(z) / scale * 1e9); };
  std::stable_sort(eigs.begin(), eigs.end(), [&](Complex x, Complex y) {
    const auto kx = key(x), ky = key(y);
    if (kx != ky) return kx > ky;
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  return eigs;
}

SpectralData spectral_data(const CMatrix& a, const RootOptions& options) {
  SpectralData s;
  s.eigenvalues = eigenvalues(a, options);
  for (int k = 0; k <= a.size(); ++k) s.elementary.push_back(elem_sym(s.eigenvalues, k));
  return s;
}

HermitianEigen hermitian_eig(const CMatrix& h_in) {
  const int n = h_in.size();
  const double norm = h_in.frobenius_norm();
  const double asym = (h_in - h_in.adjoint()).frobenius_norm();
  if (asym > 1e-12 * std::max(norm, 1e-300) && asym > 0.0) {
    throw Error(ErrorCode::NotHermitian,
                "hermitian_eig: relative asymmetry " + std::to_string(asym / norm));
  }
  CMatrix h = h_in.hermitian_part();
  CMatrix v = CMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_norm() > 1e-13 * norm; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(h(p, q));
        if (g == 0.0) continue;
        const Complex phase = std::polar(1.0, -std::arg(h(p, q)));
        const double a = h(p, p).real(), b = h(q, q).real();
        const double theta = (b - a) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = diag(1, phase) * [[c, s], [-s, c]] on coordinates (p, q).
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;
        for (int i = 0; i < n; ++i) {
          const Complex hip = h(i, p), hiq = h(i, q);
          h(i, p) = hip * upp + hiq * uqp;
          h(i, q) = hip * upq + hiq * uqq;
          const Complex vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * upp + viq * uqp;
          v(i, q) = vip * upq + viq * uqq;
        }
        for (int j = 0; j < n; ++j) {
          const Complex hpj = h(p, j), hqj = h(q, j);
          h(p, j) = std::conj(upp) * hpj + std::conj(uqp) * hqj;
          h(q, j) = std::conj(upq) * hpj + std::conj(uqq) * hqj;
        }
        h(p, q) = h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }
  if (off_norm() > 1e-13 * norm) {
    throw Error(ErrorCode::NonConvergence, "hermitian_eig: Jacobi sweeps did not converge");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return h(x, x).real() < h(y, y).real(); });
  HermitianEigen out;
  for (int idx : order) {
    out.values.push_back(h(idx, idx).real());
    CVector col(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = v(i, idx);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

MaxEigen hermitian_max_eig(const CMatrix& h) {
  HermitianEigen e = hermitian_eig(h);
  return {e.values.back(), std::move(e.vectors.back())};
}

Complex t_k(const CMatrix& a, int k, std::span<const Complex> eigs) {
  if (k < -1) throw Error(ErrorCode::InvalidArgument, "t_k: k must be at least -1");
  const int n = a.size();
  CMatrix power = CMatrix::identity(n);
  if (k == -1) {
    const double scale = std::pow(std::max(a.frobenius_norm(), 1e-300), n);
    if (std::abs(determinant(a)) <= 1e-14 * scale) {
      throw Error(ErrorCode::SingularMatrix, "t_k: t_{-1} needs an invertible matrix");
    }
    power = inverse(a);
  } else {
    for (int i = 0; i < k; ++i) power = power * a;
  }
  Complex tr{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += power(i, j) * std::conj(a(i, j));
  Complex diag{};
  for (const Complex& l : eigs) diag += std::pow(l, k) * std::conj(l);
  return tr - diag;
}

Complex elem_sym(std::span<const Complex> values, int k) {
  if (k < 0 || k > static_cast<int>(values.size())) {
    throw Error(ErrorCode::InvalidArgument, "elem_sym: k out of range");
  }
  CVector e(values.size() + 1);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += values[i] * e[j - 1];
  }
  return e[static_cast<std::size_t>(k)];
}

CMatrix pedal_matrix(const CMatrix& a, double theta, double p) {
  const Complex rot = std::polar(1.0, -theta);
  CMatrix m = (rot * a).skew_hermitian_part();
  for (int i = 0; i < a.size(); ++i) m(i, i) += p;
  return m;
}

double det_pedal(const CMatrix& a, double theta, double p) {
  return determinant(pedal_matrix(a, theta, p)).real();
}

}  // namespace covals
