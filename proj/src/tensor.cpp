#include "ndsylv/tensor.hpp"

#include <cmath>
#include <string>

namespace ndsylv {

std::int64_t checked_total(std::span<const std::int64_t> dims) {
  if (dims.empty()) throw std::invalid_argument("tensor order must be at least 1");
  std::int64_t total = 1;
  for (std::int64_t n : dims) {
    if (n < 1) throw std::invalid_argument("tensor dimensions must be at least 1");
    if (__builtin_mul_overflow(total, n, &total)) throw std::overflow_error("tensor size overflows int64");
  }
  return total;
}

std::vector<std::int64_t> cumulative_strides(std::span<const std::int64_t> dims) {
  checked_total(dims);
  std::vector<std::int64_t> s(dims.size());
  std::int64_t acc = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    s[j] = acc;
    acc *= dims[j];
  }
  return s;
}

std::int64_t linear_index(std::span<const std::int64_t> dims, std::span<const std::int64_t> multi) {
  if (multi.size() != dims.size()) throw std::invalid_argument("multi-index order mismatch");
  checked_total(dims);
  std::int64_t pos = 0;
  std::int64_t stride = 1;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (multi[j] < 1 || multi[j] > dims[j])
      throw std::invalid_argument("multi-index component " + std::to_string(j + 1) + " out of range");
    pos += (multi[j] - 1) * stride;
    stride *= dims[j];
  }
  return pos + 1;
}

NDTensor NDTensor::zeros(std::vector<std::int64_t> dims) {
  const std::int64_t total = checked_total(dims);
  NDTensor t;
  t.dims = std::move(dims);
  t.data.assign(static_cast<std::size_t>(total), cxd{});
  return t;
}

NDTensor NDTensor::make(std::vector<std::int64_t> dims, std::vector<cxd> data) {
  const std::int64_t total = checked_total(dims);
  if (static_cast<std::int64_t>(data.size()) != total)
    throw std::invalid_argument("data length " + std::to_string(data.size()) + " does not match tensor size " +
                                std::to_string(total));
  NDTensor t;
  t.dims = std::move(dims);
  t.data = std::move(data);
  return t;
}

bool NDTensor::all_finite() const {
  for (const cxd& v : data)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

MultiIndexCursor MultiIndexCursor::start(std::vector<std::int64_t> dims) {
  const std::int64_t total = checked_total(dims);
  MultiIndexCursor c;
  c.current = dims;
  c.dims = std::move(dims);
  c.index = total;
  return c;
}

void MultiIndexCursor::next() {
  if (exhausted) throw std::logic_error("cursor already exhausted");
  if (current[0] >= 2) {
    --current[0];
    --index;
    return;
  }
  std::size_t k = 1;
  while (k < dims.size() && current[k] == 1) ++k;
  if (k == dims.size()) {
    exhausted = true;
    return;
  }
  --current[k];
  for (std::size_t j = 0; j < k; ++j) current[j] = dims[j];
  --index;
}

double max_abs(const NDTensor& x) {
  double best = 0.0;
  for (const cxd& v : x.data) best = std::max(best, std::abs(v));
  return best;
}

double max_abs_diff(const NDTensor& a, const NDTensor& b) {
  if (a.dims != b.dims) throw std::invalid_argument("tensor shape mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) best = std::max(best, std::abs(a.data[i] - b.data[i]));
  return best;
}

}  // namespace ndsylv
