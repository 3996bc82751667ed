#pragma once

#include "ndsylv/sylvester.hpp"

namespace ndsylv {

/// Kronecker product (c ⊗ d)(p,q) with the right factor's indices fastest.
/// Throws std::length_error when either result extent exceeds max_order.
Matrix kron_product(const Matrix& c, const Matrix& d, int max_order = 1 << 20);

/// Kronecker sum A_N ⊕ ... ⊕ A_1 = sum_j I ⊗ ... ⊗ A_j ⊗ ... ⊗ I with A_1
/// innermost, built right-associatively. Matches the matrix of the mode-wise
/// operator under column-major flattening.
Matrix kron_sum(std::span<const Matrix> coefficients, int max_order = 4096);

/// Gaussian elimination with partial pivoting.
std::vector<cxd> dense_solve(const Matrix& a, std::vector<cxd> b);

/// Reference solution: materializes the Kronecker sum and solves the flat
/// linear system. Intended for cross-checking at small sizes.
NDTensor oracle_solve(const SylvesterProblem& problem, int max_order = 4096);

}  // namespace ndsylv
