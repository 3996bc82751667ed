#pragma once

#include <span>

#include "ndsylv/matrix.hpp"
#include "ndsylv/tensor.hpp"

namespace ndsylv {

/// Mode-j product: R(i1..iN) = sum_k M(i_j, k) X(i1,..,k,..,iN) with j = mode
/// (1-based). M must be square of order dims[mode-1]. Allocates the result.
NDTensor mode_product(const Matrix& m, int mode, const NDTensor& x);

/// Entrywise product, same dims.
NDTensor hadamard(const NDTensor& x, const NDTensor& y);

/// In-place diagonal mode product: every entry is multiplied by
/// factors[i_mode - 1].
void scale_along_mode(NDTensor& x, std::span<const double> factors, int mode);

/// y += alpha * x
void add_scaled(NDTensor& y, cxd alpha, const NDTensor& x);

namespace serial {

// Single-thread twins of the parallel kernels. Loop structure and summation
// order are identical, so results match bitwise; kept as the reference for
// tests and as the baseline in the benchmark target.
NDTensor mode_product(const Matrix& m, int mode, const NDTensor& x);
NDTensor hadamard(const NDTensor& x, const NDTensor& y);

}  // namespace serial

}  // namespace ndsylv
