#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <vector>

#include "zeno/common.hpp"

namespace zeno {

/// Dense complex matrix of fixed small dimension (2, 3 or 4), row-major.
/// Everything in this library -- propagators, transfer matrices, projectors,
/// measurement-limit generators -- lives in these sizes, so the solvers below
/// use closed-form characteristic polynomials instead of iterative methods.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim) {
    if (dim < 2 || dim > 4) throw DimensionMismatch("matrix dim must be 2, 3 or 4");
    entries_.fill(cplx{0.0, 0.0});
  }

  static Matrix identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::initializer_list<cplx> d) {
    Matrix m(static_cast<int>(d.size()));
    int i = 0;
    for (cplx v : d) m(i, i) = v, ++i;
    return m;
  }

  int dim() const { return dim_; }

  cplx& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
  cplx operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }

  Matrix& operator+=(const Matrix& o) {
    check_same_dim(o);
    for (int i = 0; i < dim_ * dim_; ++i) entries_[static_cast<std::size_t>(i)] += o.entries_[static_cast<std::size_t>(i)];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_dim(o);
    for (int i = 0; i < dim_ * dim_; ++i) entries_[static_cast<std::size_t>(i)] -= o.entries_[static_cast<std::size_t>(i)];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (int i = 0; i < dim_ * dim_; ++i) entries_[static_cast<std::size_t>(i)] *= s;
    return *this;
  }

  Matrix adjoint() const {
    Matrix m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Matrix transpose() const {
    Matrix m(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double norm() const {  // Frobenius
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s += std::norm(entries_[static_cast<std::size_t>(i)]);
    return std::sqrt(s);
  }

  double max_abs() const {
    double s = 0.0;
    for (int i = 0; i < dim_ * dim_; ++i) s = std::max(s, std::abs(entries_[static_cast<std::size_t>(i)]));
    return s;
  }

  bool is_finite() const {
    for (int i = 0; i < dim_ * dim_; ++i) {
      cplx v = entries_[static_cast<std::size_t>(i)];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
  }

 private:
  void check_same_dim(const Matrix& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("matrix dimension mismatch");
  }

  int dim_ = 0;
  std::array<cplx, 16> entries_{};
};

/// Complex column vector of dimension 2..4.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) {
    if (dim < 2 || dim > 4) throw DimensionMismatch("vector dim must be 2, 3 or 4");
    entries_.fill(cplx{0.0, 0.0});
  }
  Vec(std::initializer_list<cplx> v) : Vec(static_cast<int>(v.size())) {
    int i = 0;
    for (cplx x : v) entries_[static_cast<std::size_t>(i++)] = x;
  }

  int dim() const { return dim_; }
  cplx& operator[](int i) { return entries_[static_cast<std::size_t>(i)]; }
  cplx operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }

  double norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += std::norm(entries_[static_cast<std::size_t>(i)]);
    return std::sqrt(s);
  }

 private:
  int dim_ = 0;
  std::array<cplx, 4> entries_{};
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(Matrix a, cplx s) { return a *= s; }
inline Matrix operator*(cplx s, Matrix a) { return a *= s; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("matrix product dimension mismatch");
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Vec operator*(const Matrix& a, const Vec& x) {
  if (a.dim() != x.dim()) throw DimensionMismatch("matrix-vector dimension mismatch");
  const int n = a.dim();
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline Vec operator+(Vec a, const Vec& b) {
  for (int i = 0; i < a.dim(); ++i) a[i] += b[i];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  for (int i = 0; i < a.dim(); ++i) a[i] -= b[i];
  return a;
}
inline Vec operator*(cplx s, Vec a) {
  for (int i = 0; i < a.dim(); ++i) a[i] *= s;
  return a;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

inline cplx det(const Matrix& a) {
  switch (a.dim()) {
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default: {
      cplx d = 0.0;
      for (int j = 0; j < 4; ++j) {
        Matrix m(3);
        for (int r = 1; r < 4; ++r) {
          int cc = 0;
          for (int c = 0; c < 4; ++c)
            if (c != j) m(r - 1, cc++) = a(r, c);
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        d += sign * a(0, j) * det(m);
      }
      return d;
    }
  }
}

/// Binary exponentiation; a^0 is the identity.
inline Matrix mat_power(Matrix a, unsigned long n) {
  Matrix result = Matrix::identity(a.dim());
  while (n > 0) {
    if (n & 1UL) result = result * a;
    n >>= 1UL;
    if (n > 0) a = a * a;
  }
  return result;
}

namespace detail {

// Roots of z^2 + b z + c, cancellation-safe branch choice.
inline std::array<cplx, 2> roots_quadratic(cplx b, cplx c) {
  cplx disc = std::sqrt(b * b - 4.0 * c);
  if (std::real(std::conj(b) * disc) > 0.0) disc = -disc;
  const cplx q = -0.5 * (b - disc);  // the larger-magnitude root numerator
  if (std::abs(q) == 0.0) return {cplx{0.0, 0.0}, cplx{0.0, 0.0}};
  return {q, c / q};
}

inline cplx cbrt_principal(cplx z) {
  if (z == cplx{0.0, 0.0}) return z;
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

// Roots of z^3 + a2 z^2 + a1 z + a0 (Cardano with complex coefficients).
inline std::array<cplx, 3> roots_cubic(cplx a2, cplx a1, cplx a0) {
  const cplx shift = a2 / 3.0;
  const cplx p = a1 - a2 * a2 / 3.0;
  const cplx q = a0 - a2 * a1 / 3.0 + 2.0 * a2 * a2 * a2 / 27.0;
  const double scale = std::max({1.0, std::abs(p), std::abs(q)});
  if (std::abs(p) < 1e-30 * scale && std::abs(q) < 1e-30 * scale)
    return {-shift, -shift, -shift};
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx w = -q / 2.0 + disc;
  if (std::abs(-q / 2.0 - disc) > std::abs(w)) w = -q / 2.0 - disc;
  const cplx u = cbrt_principal(w);
  const cplx v = (std::abs(u) > 0.0) ? -p / (3.0 * u) : cplx{0.0, 0.0};
  const cplx omega{-0.5, 0.5 * std::sqrt(3.0)};
  std::array<cplx, 3> r;
  cplx uk = u, vk = v;
  for (int k = 0; k < 3; ++k) {
    r[static_cast<std::size_t>(k)] = uk + vk - shift;
    uk *= omega;
    vk *= std::conj(omega);
  }
  return r;
}

// Roots of z^4 + a3 z^3 + a2 z^2 + a1 z + a0 (Ferrari / resolvent cubic).
inline std::array<cplx, 4> roots_quartic(cplx a3, cplx a2, cplx a1, cplx a0) {
  const cplx shift = a3 / 4.0;
  // depressed quartic y^4 + p y^2 + q y + r
  const cplx p = a2 - 3.0 * a3 * a3 / 8.0;
  const cplx q = a1 - a3 * a2 / 2.0 + a3 * a3 * a3 / 8.0;
  const cplx r = a0 - a3 * a1 / 4.0 + a3 * a3 * a2 / 16.0 - 3.0 * a3 * a3 * a3 * a3 / 256.0;
  const double scale = std::max({1.0, std::abs(p), std::abs(r)});
  if (std::abs(q) < 1e-14 * scale) {  // biquadratic
    auto w = roots_quadratic(p, r);
    const cplx s0 = std::sqrt(w[0]), s1 = std::sqrt(w[1]);
    return {s0 - shift, -s0 - shift, s1 - shift, -s1 - shift};
  }
  auto ms = roots_cubic(p, p * p / 4.0 - r, -q * q / 8.0);
  cplx m = ms[0];
  for (cplx cand : ms)
    if (std::abs(cand) > std::abs(m)) m = cand;
  const cplx s = std::sqrt(2.0 * m);
  const cplx t = q / (2.0 * s);
  auto r1 = roots_quadratic(s, p / 2.0 + m - t);
  auto r2 = roots_quadratic(-s, p / 2.0 + m + t);
  return {r1[0] - shift, r1[1] - shift, r2[0] - shift, r2[1] - shift};
}

// Monic characteristic polynomial coefficients, low order first:
// det(z I - A) = c[0] + c[1] z + ... + z^n.
inline std::array<cplx, 4> char_poly(const Matrix& a) {
  const int n = a.dim();
  std::array<cplx, 4> c{};
  const cplx tr = a.trace();
  if (n == 2) {
    c[0] = det(a);
    c[1] = -tr;
  } else if (n == 3) {
    cplx m2 = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) m2 += a(i, i) * a(j, j) - a(i, j) * a(j, i);
    c[0] = -det(a);
    c[1] = m2;
    c[2] = -tr;
  } else {
    cplx m2 = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) m2 += a(i, i) * a(j, j) - a(i, j) * a(j, i);
    cplx m3 = 0.0;
    for (int skip = 0; skip < 4; ++skip) {
      Matrix sub(3);
      int ri = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == skip) continue;
        int cj = 0;
        for (int j = 0; j < 4; ++j)
          if (j != skip) sub(ri, cj++) = a(i, j);
        ++ri;
      }
      m3 += det(sub);
    }
    c[0] = det(a);
    c[1] = -m3;
    c[2] = m2;
    c[3] = -tr;
  }
  return c;
}

inline void newton_polish(std::array<cplx, 4>& roots, int n, const std::array<cplx, 4>& c) {
  for (int k = 0; k < n; ++k) {
    cplx z = roots[static_cast<std::size_t>(k)];
    for (int it = 0; it < 3; ++it) {
      cplx pv = 1.0, dv = 0.0;
      for (int d = n - 1; d >= 0; --d) {
        dv = dv * z + pv;
        pv = pv * z + c[static_cast<std::size_t>(d)];
      }
      if (std::abs(dv) < 1e-12) break;  // near-multiple root; leave as is
      const cplx step = pv / dv;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
    roots[static_cast<std::size_t>(k)] = z;
  }
}

// Null-space basis of m, full-pivot Gaussian elimination with rank tolerance.
inline std::vector<Vec> null_space(Matrix m, double tol) {
  const int n = m.dim();
  std::array<int, 4> colperm{0, 1, 2, 3};
  int rank = 0;
  for (int step = 0; step < n; ++step) {
    double best = 0.0;
    int bi = step, bj = step;
    for (int i = step; i < n; ++i)
      for (int j = step; j < n; ++j) {
        const double v = std::abs(m(i, colperm[static_cast<std::size_t>(j)]));
        if (v > best) best = v, bi = i, bj = j;
      }
    if (best <= tol) break;
    if (bi != step)
      for (int j = 0; j < n; ++j) std::swap(m(step, j), m(bi, j));
    std::swap(colperm[static_cast<std::size_t>(step)], colperm[static_cast<std::size_t>(bj)]);
    const cplx piv = m(step, colperm[static_cast<std::size_t>(step)]);
    for (int i = step + 1; i < n; ++i) {
      const cplx f = m(i, colperm[static_cast<std::size_t>(step)]) / piv;
      for (int j = step; j < n; ++j)
        m(i, colperm[static_cast<std::size_t>(j)]) -= f * m(step, colperm[static_cast<std::size_t>(j)]);
    }
    ++rank;
  }
  std::vector<Vec> basis;
  for (int free = rank; free < n; ++free) {
    Vec x(n);
    x[colperm[static_cast<std::size_t>(free)]] = 1.0;
    for (int r = rank - 1; r >= 0; --r) {
      cplx s = 0.0;
      for (int c = r + 1; c < n; ++c)
        s += m(r, colperm[static_cast<std::size_t>(c)]) * x[colperm[static_cast<std::size_t>(c)]];
      x[colperm[static_cast<std::size_t>(r)]] = -s / m(r, colperm[static_cast<std::size_t>(r)]);
    }
    const double nx = x.norm();
    for (int i = 0; i < n; ++i) x[i] /= nx;
    basis.push_back(x);
  }
  return basis;
}

}  // namespace detail

/// Solves a x = b by Gaussian elimination with partial pivoting.
/// Throws SingularMatrix when a pivot falls below 1e-14 of the matrix scale.
inline Vec solve_linear(Matrix a, Vec b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("solve dimension mismatch");
  const int n = a.dim();
  const double tol = 1e-14 * std::max(1.0, a.max_abs());
  for (int step = 0; step < n; ++step) {
    int piv = step;
    for (int i = step + 1; i < n; ++i)
      if (std::abs(a(i, step)) > std::abs(a(piv, step))) piv = i;
    if (std::abs(a(piv, step)) <= tol) throw SingularMatrix("singular system in solve_linear");
    if (piv != step) {
      for (int j = 0; j < n; ++j) std::swap(a(step, j), a(piv, j));
      std::swap(b[step], b[piv]);
    }
    for (int i = step + 1; i < n; ++i) {
      const cplx f = a(i, step) / a(step, step);
      for (int j = step; j < n; ++j) a(i, j) -= f * a(step, j);
      b[i] -= f * b[step];
    }
  }
  Vec x(n);
  for (int i = n - 1; i >= 0; --i) {
    cplx s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

inline Matrix inverse(const Matrix& a) {
  const int n = a.dim();
  Matrix inv(n);
  for (int c = 0; c < n; ++c) {
    Vec e(n);
    e[c] = 1.0;
    Vec x = solve_linear(a, e);
    for (int r = 0; r < n; ++r) inv(r, c) = x[r];
  }
  return inv;
}

/// Eigenvalues (closed-form characteristic polynomial, Newton-polished) and
/// right eigenvectors. `defective` is set when a clustered eigenvalue lacks a
/// full set of independent eigenvectors or when cond(V) exceeds 1e8; callers
/// must not rely on `vectors` in that case.
struct EigenDecomposition {
  int dim = 0;
  std::array<cplx, 4> values{};
  Matrix vectors;
  bool defective = false;
  double vector_condition = 0.0;
};

inline EigenDecomposition eigen(const Matrix& a) {
  const int n = a.dim();
  const auto c = detail::char_poly(a);
  std::array<cplx, 4> lam{};
  if (n == 2) {
    auto r = detail::roots_quadratic(c[1], c[0]);
    lam[0] = r[0], lam[1] = r[1];
  } else if (n == 3) {
    auto r = detail::roots_cubic(c[2], c[1], c[0]);
    std::copy(r.begin(), r.end(), lam.begin());
  } else {
    lam = detail::roots_quartic(c[3], c[2], c[1], c[0]);
  }
  detail::newton_polish(lam, n, c);
  std::sort(lam.begin(), lam.begin() + n, [](cplx x, cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });

  const double scale = std::max(1.0, a.norm());
  const double cluster_tol = 1e-6 * scale;
  const double rank_tol = 1e-7 * scale;

  EigenDecomposition ed;
  ed.dim = n;
  ed.values = lam;
  ed.vectors = Matrix(n);
  bool deficit = false;
  int col = 0;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && std::abs(lam[static_cast<std::size_t>(j)] - lam[static_cast<std::size_t>(i)]) <= cluster_tol) ++j;
    const int mult = j - i;
    cplx lbar = 0.0;
    for (int k = i; k < j; ++k) lbar += lam[static_cast<std::size_t>(k)];
    lbar /= static_cast<double>(mult);
    Matrix shifted = a;
    for (int d = 0; d < n; ++d) shifted(d, d) -= lbar;
    auto basis = detail::null_space(shifted, rank_tol);
    if (static_cast<int>(basis.size()) < mult) deficit = true;
    for (int k = 0; k < mult; ++k) {
      if (k < static_cast<int>(basis.size())) {
        for (int r = 0; r < n; ++r) ed.vectors(r, col) = basis[static_cast<std::size_t>(k)][r];
      } else {
        ed.vectors(col % n, col) = 1.0;  // placeholder, decomposition is defective
      }
      ++col;
    }
    i = j;
  }

  double cond = std::numeric_limits<double>::infinity();
  if (!deficit) {
    try {
      cond = ed.vectors.norm() * inverse(ed.vectors).norm();
    } catch (const SingularMatrix&) {
      deficit = true;
    }
  }
  ed.vector_condition = cond;
  ed.defective = deficit || cond > 1e8;
  return ed;
}

namespace detail {

inline Matrix exp_squaring(const Matrix& a, cplx scale) {
  const int n = a.dim();
  Matrix b = a;
  b *= scale;
  int squarings = 0;
  const double nb = b.norm();
  if (nb > 0.25) {
    squarings = static_cast<int>(std::ceil(std::log2(nb / 0.25)));
    b *= std::pow(2.0, -squarings);
  }
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= 1.0 / static_cast<double>(k);
    sum += term;
    if (term.norm() <= 1e-18 * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

}  // namespace detail

/// exp(scale * a). Diagonalizable inputs go through the eigendecomposition;
/// defective or ill-conditioned eigenbases fall back to scaling-and-squaring
/// on a truncated series, which is what makes the critical-coupling generator
/// (a genuine Jordan block) evaluate correctly.
inline Matrix mat_exp(const Matrix& a, cplx scale = cplx{1.0, 0.0}) {
  const EigenDecomposition ed = eigen(a);
  if (!ed.defective) {
    const int n = a.dim();
    Matrix d(n);
    for (int i = 0; i < n; ++i) d(i, i) = std::exp(scale * ed.values[static_cast<std::size_t>(i)]);
    try {
      return ed.vectors * d * inverse(ed.vectors);
    } catch (const SingularMatrix&) {
      // fall through
    }
  }
  return detail::exp_squaring(a, scale);
}

// ---- Pauli algebra and tensor-product helpers -----------------------------

inline Matrix pauli(int i) {
  Matrix m(2);
  switch (i) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -im;
      m(1, 0) = im;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw InvalidParameter("pauli index must be 1, 2 or 3");
  }
  return m;
}

/// Kronecker product of two 2x2 matrices -> 4x4 (first factor = slow index).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (a.dim() != 2 || b.dim() != 2) throw DimensionMismatch("kron expects 2x2 factors");
  Matrix m(4);
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 2; ++ja)
      for (int ib = 0; ib < 2; ++ib)
        for (int jb = 0; jb < 2; ++jb) m(ia * 2 + ib, ja * 2 + jb) = a(ia, ja) * b(ib, jb);
  return m;
}

}  // namespace zeno
