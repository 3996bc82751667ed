#pragma once

#include "ndsylv/matrix.hpp"

namespace ndsylv {

/// Unitary factorization A = U T U* with T upper triangular. The strict lower
/// triangle of T holds exact zeros.
struct SchurFactors {
  Matrix u;
  Matrix t;

  int order() const noexcept { return t.rows(); }
};

/// Complex Schur decomposition via Householder reduction to Hessenberg form
/// followed by implicitly shifted QR with Wilkinson shifts. Throws
/// ConvergenceError if the sweep budget (30 per eigenvalue) is exhausted.
SchurFactors schur(const Matrix& a);

/// exp(t * T) for upper triangular T, computed by the Parlett recurrence on
/// the superdiagonals. Falls back to scaling-and-squaring Pade when any two
/// diagonal entries are closer than 1e-8 * (1 + max |T_jj|).
Matrix triangular_exp(const Matrix& t_mat, double t);

/// Scaling-and-squaring [6/6] Pade approximation of exp(A); general matrices.
Matrix pade_exp(const Matrix& a);

/// exp(t * A) = U exp(t T) U* through the Schur form.
Matrix matrix_exp(const Matrix& a, double t);
Matrix matrix_exp(const SchurFactors& f, double t);

}  // namespace ndsylv
