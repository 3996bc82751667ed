#include "ndsylv/matrix.hpp"

#include <cmath>
#include <limits>

namespace ndsylv {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const cxd> d) {
  Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cxd>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw std::invalid_argument("ragged row list");
    int j = 0;
    for (cxd v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(cols_, rows_);
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i) m(j, i) = (*this)(i, j);
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(rows_, rhs.cols_);
  for (int j = 0; j < rhs.cols_; ++j)
    for (int k = 0; k < cols_; ++k) {
      const cxd b = rhs(k, j);
      if (b == cxd{}) continue;
      for (int i = 0; i < rows_; ++i) r(i, j) += (*this)(i, k) * b;
    }
  return r;
}

std::vector<cxd> Matrix::operator*(std::span<const cxd> v) const {
  if (static_cast<std::size_t>(cols_) != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<cxd> r(static_cast<std::size_t>(rows_));
  for (int k = 0; k < cols_; ++k) {
    const cxd b = v[static_cast<std::size_t>(k)];
    for (int i = 0; i < rows_; ++i) r[static_cast<std::size_t>(i)] += (*this)(i, k) * b;
  }
  return r;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix r = *this;
  r += rhs;
  return r;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix r = *this;
  r -= rhs;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(cxd s) {
  for (auto& v : a_) v *= s;
  return *this;
}

double Matrix::norm_frobenius() const {
  double s = 0.0;
  for (const cxd& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (const cxd& v : a_) best = std::max(best, std::abs(v));
  return best;
}

bool Matrix::all_finite() const {
  for (const cxd& v : a_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Matrix operator*(cxd s, const Matrix& m) {
  Matrix r = m;
  r *= s;
  return r;
}

Matrix operator*(double s, const Matrix& m) { return cxd(s, 0.0) * m; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) best = std::max(best, std::abs(a(i, j) - b(i, j)));
  return best;
}

PartialPivLU::PartialPivLU(Matrix a) : lu_(std::move(a)) {
  if (!lu_.square()) throw std::invalid_argument("LU requires a square matrix");
  const int n = lu_.rows();
  const double tol = std::numeric_limits<double>::epsilon() * lu_.norm_inf();
  perm_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu_(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (best <= tol) throw SingularMatrixError("pivot below threshold at column " + std::to_string(k));
    perm_[static_cast<std::size_t>(k)] = piv;
    if (piv != k)
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
    const cxd inv_piv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const cxd f = lu_(i, k) * inv_piv;
      lu_(i, k) = f;
      if (f == cxd{}) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

std::vector<cxd> PartialPivLU::solve(std::vector<cxd> rhs) const {
  const int n = lu_.rows();
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs length mismatch");
  // Rows were exchanged in full during factorization, so all swaps must hit
  // the right-hand side before the forward pass.
  for (int k = 0; k < n; ++k) {
    const int piv = perm_[static_cast<std::size_t>(k)];
    if (piv != k) std::swap(rhs[static_cast<std::size_t>(k)], rhs[static_cast<std::size_t>(piv)]);
  }
  for (int k = 0; k < n; ++k)
    for (int i = k + 1; i < n; ++i) rhs[static_cast<std::size_t>(i)] -= lu_(i, k) * rhs[static_cast<std::size_t>(k)];
  for (int i = n - 1; i >= 0; --i) {
    cxd s = rhs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * rhs[static_cast<std::size_t>(j)];
    rhs[static_cast<std::size_t>(i)] = s / lu_(i, i);
  }
  return rhs;
}

Matrix PartialPivLU::solve(Matrix rhs) const {
  const int n = lu_.rows();
  if (rhs.rows() != n) throw std::invalid_argument("rhs row count mismatch");
  std::vector<cxd> col(static_cast<std::size_t>(n));
  for (int j = 0; j < rhs.cols(); ++j) {
    for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = rhs(i, j);
    col = solve(std::move(col));
    for (int i = 0; i < n; ++i) rhs(i, j) = col[static_cast<std::size_t>(i)];
  }
  return rhs;
}

}  // namespace ndsylv
