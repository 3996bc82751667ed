#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "ndsylv/types.hpp"

namespace ndsylv {

/// Dense complex matrix, column-major storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
  }

  static Matrix identity(int n);
  static Matrix diagonal(std::span<const cxd> d);
  /// Row-major initializer, intended for small literals in tests and tools.
  static Matrix from_rows(std::initializer_list<std::initializer_list<cxd>> rows);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_]; }
  cxd operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_]; }

  cxd* data() noexcept { return a_.data(); }
  const cxd* data() const noexcept { return a_.data(); }

  Matrix adjoint() const;
  Matrix transpose() const;

  Matrix operator*(const Matrix& rhs) const;
  std::vector<cxd> operator*(std::span<const cxd> v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cxd s);

  double norm_frobenius() const;
  /// Max absolute row sum.
  double norm_inf() const;
  double max_abs() const;
  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cxd> a_;
};

Matrix operator*(cxd s, const Matrix& m);
Matrix operator*(double s, const Matrix& m);

double max_abs_diff(const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting. Construction throws
/// SingularMatrixError when the best available pivot falls below
/// eps * norm_inf of the input.
class PartialPivLU {
 public:
  explicit PartialPivLU(Matrix a);

  std::vector<cxd> solve(std::vector<cxd> rhs) const;
  Matrix solve(Matrix rhs) const;

  int order() const noexcept { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<int> perm_;
};

}  // namespace ndsylv
