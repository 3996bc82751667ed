#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ndsylv/types.hpp"

namespace ndsylv {

/// Product of all dims. Throws std::invalid_argument for empty or non-positive
/// dims and std::overflow_error when the product leaves int64 range.
std::int64_t checked_total(std::span<const std::int64_t> dims);

/// Cumulative strides {1, n1, n1*n2, ...}; entry j is the flat distance
/// between neighbours along mode j+1.
std::vector<std::int64_t> cumulative_strides(std::span<const std::int64_t> dims);

/// 1-based flat position of the 1-based multi-index
/// (i1-1) + (i2-1)*n1 + ... + (iN-1)*n1*...*n_{N-1} + 1.
std::int64_t linear_index(std::span<const std::int64_t> dims, std::span<const std::int64_t> multi);

/// Dense complex tensor stored column-major: first index varies fastest.
struct NDTensor {
  std::vector<std::int64_t> dims;
  std::vector<cxd> data;

  static NDTensor zeros(std::vector<std::int64_t> dims);
  /// Adopts `data` as the column-major entries; length must equal the total size.
  static NDTensor make(std::vector<std::int64_t> dims, std::vector<cxd> data);

  int order() const noexcept { return static_cast<int>(dims.size()); }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(data.size()); }

  cxd at(std::span<const std::int64_t> multi) const { return data[static_cast<std::size_t>(linear_index(dims, multi) - 1)]; }
  cxd& at(std::span<const std::int64_t> multi) { return data[static_cast<std::size_t>(linear_index(dims, multi) - 1)]; }

  bool all_finite() const;
};

/// The column-major flattening. Entry i1 + (i2-1)n1 + ... of the result is
/// X(i1,...,iN), matching linear_index.
inline const std::vector<cxd>& vec(const NDTensor& x) { return x.data; }

/// Enumerates all multi-indices from (n1,...,nN) down to (1,...,1) with the
/// first component moving fastest; `index` tracks the flat position and
/// decreases by exactly one per step.
struct MultiIndexCursor {
  std::vector<std::int64_t> dims;
  std::vector<std::int64_t> current;
  std::int64_t index = 0;
  bool exhausted = false;

  static MultiIndexCursor start(std::vector<std::int64_t> dims);
  void next();
};

double max_abs(const NDTensor& x);
double max_abs_diff(const NDTensor& a, const NDTensor& b);

}  // namespace ndsylv
