#include "ndsylv/schur.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace ndsylv {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Reduce H to upper Hessenberg form by Householder reflections, accumulating
// the transformations into U (H <- P H P, U <- U P with P = I - beta v v*).
void hessenberg(Matrix& h, Matrix& u) {
  const int n = h.rows();
  std::vector<cxd> v(static_cast<std::size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) xnorm2 += std::norm(h(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cxd x0 = h(k + 1, k);
    const double ax0 = std::abs(x0);
    const cxd alpha = ax0 == 0.0 ? cxd(-xnorm, 0.0) : -(x0 / ax0) * xnorm;
    const int m = n - k - 1;
    v[0] = x0 - alpha;
    for (int i = 1; i < m; ++i) v[static_cast<std::size_t>(i)] = h(k + 1 + i, k);
    double vnorm2 = 0.0;
    for (int i = 0; i < m; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    for (int c = k; c < n; ++c) {
      cxd s{};
      for (int i = 0; i < m; ++i) s += std::conj(v[static_cast<std::size_t>(i)]) * h(k + 1 + i, c);
      s *= beta;
      for (int i = 0; i < m; ++i) h(k + 1 + i, c) -= v[static_cast<std::size_t>(i)] * s;
    }
    for (int r = 0; r < n; ++r) {
      cxd s{};
      for (int i = 0; i < m; ++i) s += h(r, k + 1 + i) * v[static_cast<std::size_t>(i)];
      s *= beta;
      for (int i = 0; i < m; ++i) h(r, k + 1 + i) -= s * std::conj(v[static_cast<std::size_t>(i)]);
    }
    for (int r = 0; r < n; ++r) {
      cxd s{};
      for (int i = 0; i < m; ++i) s += u(r, k + 1 + i) * v[static_cast<std::size_t>(i)];
      s *= beta;
      for (int i = 0; i < m; ++i) u(r, k + 1 + i) -= s * std::conj(v[static_cast<std::size_t>(i)]);
    }
    h(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) h(i, k) = cxd{};
  }
}

struct GivensRotation {
  double c;
  cxd s;
};

// Maps (f, g) to (r, 0): c = |f|/d, s = sign(f) * conj(g) / d, d = hypot(|f|,|g|).
GivensRotation make_givens(cxd f, cxd g) {
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) return {1.0, cxd{}};
  if (af == 0.0) return {0.0, std::conj(g) / ag};
  const double d = std::hypot(af, ag);
  const cxd phase = f / af;
  return {af / d, phase * std::conj(g) / d};
}

// Eigenvalue of the trailing 2x2 block closest to the bottom corner entry.
cxd wilkinson_shift(const Matrix& h, int hi) {
  const cxd a = h(hi - 1, hi - 1);
  const cxd b = h(hi - 1, hi);
  const cxd c = h(hi, hi - 1);
  const cxd d = h(hi, hi);
  const cxd m = 0.5 * (a + d);
  const cxd p = 0.5 * (a - d);
  cxd q = std::sqrt(p * p + b * c);
  if (std::abs(m + q) < std::abs(m - q)) q = -q;
  const cxd big = m + q;
  const cxd det = a * d - b * c;
  const cxd small = big == cxd{} ? cxd{} : det / big;
  return std::abs(big - d) < std::abs(small - d) ? big : small;
}

// One implicit single-shift QR sweep on the active window [lo, hi],
// accumulating rotations into U.
void qr_sweep(Matrix& h, Matrix& u, int lo, int hi, cxd shift) {
  const int n = h.rows();
  cxd x = h(lo, lo) - shift;
  cxd y = h(lo + 1, lo);
  for (int k = lo; k < hi; ++k) {
    const auto [c, s] = make_givens(x, y);
    const cxd sc = std::conj(s);
    const int c0 = k > lo ? k - 1 : lo;
    for (int col = c0; col < n; ++col) {
      const cxd t1 = h(k, col);
      const cxd t2 = h(k + 1, col);
      h(k, col) = c * t1 + s * t2;
      h(k + 1, col) = -sc * t1 + c * t2;
    }
    const int rmax = std::min(k + 2, hi);
    for (int row = 0; row <= rmax; ++row) {
      const cxd t1 = h(row, k);
      const cxd t2 = h(row, k + 1);
      h(row, k) = c * t1 + sc * t2;
      h(row, k + 1) = -s * t1 + c * t2;
    }
    for (int row = 0; row < n; ++row) {
      const cxd t1 = u(row, k);
      const cxd t2 = u(row, k + 1);
      u(row, k) = c * t1 + sc * t2;
      u(row, k + 1) = -s * t1 + c * t2;
    }
    if (k + 1 < hi) {
      x = h(k + 1, k);
      y = h(k + 2, k);
    }
  }
}

void qr_iterate(Matrix& h, Matrix& u) {
  const int n = h.rows();
  const double hnorm = h.norm_frobenius();
  const int per_eigenvalue_budget = 30;
  const long total_budget = 30L * n + 10;
  long total_sweeps = 0;
  int hi = n - 1;
  int iters_here = 0;
  while (hi >= 1) {
    for (int k = 1; k <= hi; ++k) {
      if (h(k, k - 1) == cxd{}) continue;
      double scale = std::abs(h(k - 1, k - 1)) + std::abs(h(k, k));
      if (scale == 0.0) scale = hnorm;
      if (std::abs(h(k, k - 1)) <= kEps * scale) h(k, k - 1) = cxd{};
    }
    if (h(hi, hi - 1) == cxd{}) {
      --hi;
      iters_here = 0;
      continue;
    }
    int lo = hi;
    while (lo > 0 && h(lo, lo - 1) != cxd{}) --lo;
    if (iters_here >= per_eigenvalue_budget || total_sweeps >= total_budget)
      throw ConvergenceError("QR iteration did not deflate within the sweep budget");
    ++iters_here;
    ++total_sweeps;
    cxd shift;
    if (iters_here % 10 == 0) {
      // Exceptional shift to break symmetric stalls.
      double s = std::abs(h(hi, hi - 1));
      if (hi >= 2) s += std::abs(h(hi - 1, hi - 2));
      shift = h(hi, hi) + 0.75 * s;
    } else {
      shift = wilkinson_shift(h, hi);
    }
    qr_sweep(h, u, lo, hi, shift);
  }
}

// True when every pair of diagonal entries is separated by at least
// 1e-8 * (1 + max |T_jj|).
bool diagonal_well_separated(const Matrix& t_mat) {
  const int n = t_mat.rows();
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) dmax = std::max(dmax, std::abs(t_mat(i, i)));
  const double threshold = 1e-8 * (1.0 + dmax);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      if (std::abs(t_mat(i, i) - t_mat(k, k)) < threshold) return false;
  return true;
}

void require_upper_triangular(const Matrix& t_mat) {
  if (!t_mat.square()) throw std::invalid_argument("triangular_exp requires a square matrix");
  for (int j = 0; j < t_mat.cols(); ++j)
    for (int i = j + 1; i < t_mat.rows(); ++i)
      if (t_mat(i, j) != cxd{}) throw std::invalid_argument("triangular_exp requires an upper triangular matrix");
}

void zero_strict_lower(Matrix& m) {
  for (int j = 0; j < m.cols(); ++j)
    for (int i = j + 1; i < m.rows(); ++i) m(i, j) = cxd{};
}

}  // namespace

SchurFactors schur(const Matrix& a) {
  if (!a.square() || a.rows() == 0) throw std::invalid_argument("schur requires a non-empty square matrix");
  if (!a.all_finite()) throw std::invalid_argument("schur requires finite entries");
  const int n = a.rows();
  SchurFactors f{Matrix::identity(n), a};
  if (n > 1) {
    hessenberg(f.t, f.u);
    qr_iterate(f.t, f.u);
  }
  zero_strict_lower(f.t);
  return f;
}

Matrix triangular_exp(const Matrix& t_mat, double t) {
  require_upper_triangular(t_mat);
  const int n = t_mat.rows();
  if (t == 0.0) return Matrix::identity(n);
  if (!diagonal_well_separated(t_mat)) {
    Matrix f = pade_exp(cxd(t, 0.0) * t_mat);
    zero_strict_lower(f);
    return f;
  }
  Matrix s = cxd(t, 0.0) * t_mat;
  Matrix f(n, n);
  for (int i = 0; i < n; ++i) f(i, i) = std::exp(s(i, i));
  for (int p = 1; p < n; ++p) {
    for (int i = 0; i + p < n; ++i) {
      const int j = i + p;
      cxd num = s(i, j) * (f(j, j) - f(i, i));
      for (int k = i + 1; k < j; ++k) num += s(i, k) * f(k, j) - f(i, k) * s(k, j);
      f(i, j) = num / (s(j, j) - s(i, i));
    }
  }
  return f;
}

Matrix pade_exp(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("pade_exp requires a square matrix");
  const int n = a.rows();
  const double norm = a.norm_inf();
  int squarings = 0;
  Matrix a1 = a;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm))) + 1;
    a1 *= cxd(std::ldexp(1.0, -squarings), 0.0);
  }
  constexpr int q = 6;
  double coeff[q + 1];
  coeff[0] = 1.0;
  for (int k = 1; k <= q; ++k) coeff[k] = coeff[k - 1] * static_cast<double>(q - k + 1) / (k * (2.0 * q - k + 1));
  const Matrix a2 = a1 * a1;
  Matrix even = coeff[0] * Matrix::identity(n);
  Matrix odd_inner = coeff[1] * Matrix::identity(n);
  Matrix power = a2;
  for (int k = 2; k <= q; k += 2) {
    even += coeff[k] * power;
    if (k + 1 <= q) odd_inner += coeff[k + 1] * power;
    if (k + 2 <= q) power = power * a2;
  }
  const Matrix odd = a1 * odd_inner;
  const Matrix num = even + odd;
  const Matrix den = even - odd;
  Matrix f = PartialPivLU(den).solve(num);
  for (int i = 0; i < squarings; ++i) f = f * f;
  return f;
}

Matrix matrix_exp(const SchurFactors& f, double t) {
  return f.u * triangular_exp(f.t, t) * f.u.adjoint();
}

Matrix matrix_exp(const Matrix& a, double t) { return matrix_exp(schur(a), t); }

}  // namespace ndsylv
