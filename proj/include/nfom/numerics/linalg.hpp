#pragma once

// Small dense linear algebra for the 4x4 covariance machinery: a plain
// row-major Matrix4, the Lyapunov steady-state solve via the 16x16
// Kronecker-linearized system, and a Routh-Hurwitz stability test on the
// characteristic polynomial (no iterative eigensolver needed at fixed size).

#include <array>
#include <cmath>
#include <stdexcept>

namespace nfom::numerics {

class UnstableDynamicsError : public std::runtime_error {
 public:
  explicit UnstableDynamicsError(const std::string& what)
      : std::runtime_error(what) {}
};

class Matrix4 {
 public:
  Matrix4() : a_{} {}

  static Matrix4 identity() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix4 diagonal(double d0, double d1, double d2, double d3) {
    Matrix4 m;
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    m(3, 3) = d3;
    return m;
  }

  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(4 * r + c)]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(4 * r + c)]; }

  Matrix4 transpose() const {
    Matrix4 t;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix4 operator+(const Matrix4& o) const {
    Matrix4 s;
    for (std::size_t i = 0; i < 16; ++i) s.a_[i] = a_[i] + o.a_[i];
    return s;
  }

  Matrix4 operator-(const Matrix4& o) const {
    Matrix4 s;
    for (std::size_t i = 0; i < 16; ++i) s.a_[i] = a_[i] - o.a_[i];
    return s;
  }

  Matrix4 operator*(const Matrix4& o) const {
    Matrix4 p;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += (*this)(r, k) * o(k, c);
        p(r, c) = s;
      }
    return p;
  }

  Matrix4 scaled(double s) const {
    Matrix4 m;
    for (std::size_t i = 0; i < 16; ++i) m.a_[i] = s * a_[i];
    return m;
  }

  double trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const {
    for (double v : a_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  std::array<double, 16> a_;
};

// Determinant of the 2x2 block with upper-left corner (r0, c0).
inline double block2_det(const Matrix4& m, int r0, int c0) {
  return m(r0, c0) * m(r0 + 1, c0 + 1) - m(r0, c0 + 1) * m(r0 + 1, c0);
}

inline double det4(const Matrix4& m) {
  // LU with partial pivoting; determinant is the signed pivot product.
  double a[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
  double det = 1.0;
  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int r = k + 1; r < 4; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (piv != k) {
      for (int c = 0; c < 4; ++c) std::swap(a[k][c], a[piv][c]);
      det = -det;
    }
    if (a[k][k] == 0.0) return 0.0;
    det *= a[k][k];
    for (int r = k + 1; r < 4; ++r) {
      const double f = a[r][k] / a[k][k];
      for (int c = k; c < 4; ++c) a[r][c] -= f * a[k][c];
    }
  }
  return det;
}

namespace detail {

// In-place Gaussian elimination with partial pivoting, size n <= 16.
// Solves M x = b; returns false on a (numerically) singular system.
inline bool solve_dense(int n, double* m, double* b) {
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(m[r * n + k]) > std::abs(m[piv * n + k])) piv = r;
    if (m[piv * n + k] == 0.0) return false;
    if (piv != k) {
      for (int c = k; c < n; ++c) std::swap(m[k * n + c], m[piv * n + c]);
      std::swap(b[k], b[piv]);
    }
    const double inv = 1.0 / m[k * n + k];
    for (int r = k + 1; r < n; ++r) {
      const double f = m[r * n + k] * inv;
      if (f == 0.0) continue;
      for (int c = k; c < n; ++c) m[r * n + c] -= f * m[k * n + c];
      b[r] -= f * b[k];
    }
  }
  for (int k = n - 1; k >= 0; --k) {
    double s = b[k];
    for (int c = k + 1; c < n; ++c) s -= m[k * n + c] * b[c];
    b[k] = s / m[k * n + k];
  }
  return true;
}

}  // namespace detail

// Characteristic polynomial lambda^4 + c[3] l^3 + c[2] l^2 + c[1] l + c[0]
// via Faddeev-LeVerrier.
inline std::array<double, 4> char_poly(const Matrix4& a) {
  Matrix4 m = a;
  const double c3 = -m.trace();
  Matrix4 m2 = a * (m + Matrix4::identity().scaled(c3));
  const double c2 = -m2.trace() / 2.0;
  Matrix4 m3 = a * (m2 + Matrix4::identity().scaled(c2));
  const double c1 = -m3.trace() / 3.0;
  Matrix4 m4 = a * (m3 + Matrix4::identity().scaled(c1));
  const double c0 = -m4.trace() / 4.0;
  return {c0, c1, c2, c3};
}

// All eigenvalues strictly in the left half-plane (Routh-Hurwitz on the
// scaled matrix; scaling leaves stability unchanged and avoids overflow).
inline bool is_hurwitz(const Matrix4& a) {
  if (!a.all_finite()) return false;
  const double s = a.max_abs();
  if (s == 0.0) return false;
  const auto c = char_poly(a.scaled(1.0 / s));
  const double a0 = c[0], a1 = c[1], a2 = c[2], a3 = c[3];
  if (!(a3 > 0.0) || !(a0 > 0.0)) return false;
  const double b1 = a3 * a2 - a1;
  if (!(b1 > 0.0)) return false;
  return b1 * a1 - a3 * a3 * a0 > 0.0;
}

// Steady-state covariance: solves A V + V A^T + D = 0 for symmetric V.
// Throws UnstableDynamicsError when A is not Hurwitz.
inline Matrix4 solve_lyapunov(const Matrix4& a, const Matrix4& d) {
  if (!a.all_finite() || !d.all_finite())
    throw std::invalid_argument("solve_lyapunov: non-finite input");
  const Matrix4 dt = d.transpose();
  double asym = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) asym = std::max(asym, std::abs(d(r, c) - dt(r, c)));
  if (asym > 1e-12 * std::max(1.0, d.max_abs()))
    throw std::invalid_argument("solve_lyapunov: D must be symmetric");
  if (!is_hurwitz(a))
    throw UnstableDynamicsError("unstable dynamics: drift matrix is not Hurwitz");

  // Scale for conditioning: (A/s) V + V (A/s)^T = -(D/s) has the same V.
  const double s = a.max_abs();
  const Matrix4 as = a.scaled(1.0 / s);
  const Matrix4 ds = d.scaled(1.0 / s);

  // Row-major vec: unknown x[4i+j] = V_ij. Equation (i,j):
  //   sum_k A_ik V_kj + V_ik A_jk = -D_ij.
  std::array<double, 256> m{};
  std::array<double, 16> rhs{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int row = 4 * i + j;
      for (int k = 0; k < 4; ++k) {
        m[static_cast<std::size_t>(row * 16 + (4 * k + j))] += as(i, k);
        m[static_cast<std::size_t>(row * 16 + (4 * i + k))] += as(j, k);
      }
      rhs[static_cast<std::size_t>(row)] = -ds(i, j);
    }
  if (!detail::solve_dense(16, m.data(), rhs.data()))
    throw UnstableDynamicsError("unstable dynamics: singular Lyapunov system");

  Matrix4 v;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v(i, j) = rhs[static_cast<std::size_t>(4 * i + j)];
  // Symmetrize; the exact solution is symmetric, the solve only roundoff off.
  Matrix4 vs;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) vs(i, j) = 0.5 * (v(i, j) + v(j, i));

  const Matrix4 residual = a * vs + vs * a.transpose() + d;
  const double bound =
      1e-10 * (a.frobenius_norm() * vs.frobenius_norm() + d.frobenius_norm());
  if (residual.frobenius_norm() > bound)
    throw std::runtime_error("solve_lyapunov: residual bound violated");
  return vs;
}

// Cholesky-based positive-semidefiniteness check (with tolerance jitter).
inline bool is_positive_semidefinite(const Matrix4& v, double tol = 1e-12) {
  double a[4][4];
  const double jitter = tol * std::max(1.0, v.max_abs());
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] = v(r, c) + (r == c ? jitter : 0.0);
  for (int k = 0; k < 4; ++k) {
    for (int r = 0; r < k; ++r) a[k][k] -= a[k][r] * a[k][r];
    if (a[k][k] < 0.0) return false;
    a[k][k] = std::sqrt(a[k][k]);
    for (int r = k + 1; r < 4; ++r) {
      for (int c = 0; c < k; ++c) a[r][k] -= a[r][c] * a[k][c];
      a[r][k] = a[k][k] > 0.0 ? a[r][k] / a[k][k] : 0.0;
    }
  }
  return true;
}

}  // namespace nfom::numerics
