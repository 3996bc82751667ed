#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ndsylv/kernels.hpp"
#include "ndsylv/schur.hpp"
#include "ndsylv/tensor.hpp"

namespace ndsylv {

/// sum_j A_j applied along mode j of X equals B; one square A_j per mode.
struct SylvesterProblem {
  std::vector<Matrix> coefficients;
  NDTensor rhs;
};

struct SolveOptions {
  /// Denominators with |d| <= singular_tol raise SingularOperatorError.
  /// Non-positive means eps * sum of the coefficient Frobenius norms.
  double singular_tol = 0.0;
  /// Route through the eigenvalue-reciprocal tensor when every triangular
  /// factor is numerically diagonal.
  bool allow_fast_path = true;
  /// Drop imaginary parts of the solution (for real-data problems).
  bool real_output = false;
};

struct SolveReport {
  double min_abs_denominator = 0.0;
  bool used_normal_fast_path = false;
  std::int64_t flop_estimate = 0;
  std::int64_t schur_flop_estimate = 0;
  std::int64_t backsub_entries = 0;
  std::int64_t backsub_multiplies = 0;
  double schur_seconds = 0.0;
  double transform_seconds = 0.0;
  double backsub_seconds = 0.0;
  double inverse_seconds = 0.0;
  double total_seconds = 0.0;
};

struct SolveResult {
  NDTensor x;
  SolveReport report;
};

/// Eigenvalue data for the diagonal (normal coefficient) route. lambda holds
/// 1 / (sum_j t_j(i_j, i_j)) at every multi-index; construction throws
/// SingularOperatorError when a sum falls at or below the tolerance.
struct DiagonalSpectra {
  std::vector<std::vector<cxd>> eigenvalues;  // per mode, diagonal of T_j
  NDTensor lambda;
  double min_abs_denominator = 0.0;
};

DiagonalSpectra make_diagonal_spectra(std::span<const SchurFactors> factors, double singular_tol);

/// sum_j A_j applied along mode j of X.
NDTensor apply_operator(std::span<const Matrix> coefficients, const NDTensor& x);

/// C = U_N* applied along mode N of ( ... (U_1* applied along mode 1 of B)).
NDTensor forward_transform(std::span<const SchurFactors> factors, NDTensor b);

/// X = U_N applied along mode N of ( ... (U_1 applied along mode 1 of Y)).
NDTensor inverse_transform(std::span<const SchurFactors> factors, NDTensor y);

struct BackSubstituteStats {
  std::int64_t entries = 0;
  std::int64_t multiplies = 0;
  double min_abs_denominator = 0.0;
};

/// Solves sum_j T_j along mode j of Y = C for upper triangular T_j by one
/// descending pass over all multi-indices, overwriting C with Y in place.
BackSubstituteStats back_substitute(std::span<const Matrix> triangular, NDTensor& c, double singular_tol);

SolveResult solve(const SylvesterProblem& problem, const SolveOptions& options = {});

/// Diagonal route: X = inverse transform of (lambda entrywise* forward
/// transform of B). Exact only when the coefficients are normal.
NDTensor solve_normal(const SylvesterProblem& problem, const DiagonalSpectra& spectra,
                      std::span<const SchurFactors> factors);

/// n1...nN * (5 * sum n_j - N + 1): transform plus back-substitution flops.
std::int64_t flop_estimate(std::span<const std::int64_t> dims);

/// Worst-case QR cost bound 25 * sum n_j^3.
std::int64_t schur_flop_estimate(std::span<const std::int64_t> dims);

}  // namespace ndsylv
