#include "ndsylv/kernels.hpp"

#include <cstdint>

namespace ndsylv {

namespace {

struct ModeSlab {
  std::int64_t inner;  // product of dims before the mode
  std::int64_t n;      // extent of the mode itself
  std::int64_t outer;  // product of dims after the mode
};

ModeSlab slab_for_mode(std::span<const std::int64_t> dims, int mode) {
  if (mode < 1 || mode > static_cast<int>(dims.size())) throw std::invalid_argument("mode out of range");
  ModeSlab s{1, dims[static_cast<std::size_t>(mode - 1)], 1};
  for (int j = 0; j < mode - 1; ++j) s.inner *= dims[static_cast<std::size_t>(j)];
  for (int j = mode; j < static_cast<int>(dims.size()); ++j) s.outer *= dims[static_cast<std::size_t>(j)];
  return s;
}

template <bool Parallel>
NDTensor mode_product_impl(const Matrix& m, int mode, const NDTensor& x) {
  const ModeSlab s = slab_for_mode(x.dims, mode);
  if (!m.square() || m.rows() != s.n)
    throw std::invalid_argument("mode product: matrix order does not match mode extent");
  NDTensor r = NDTensor::zeros(x.dims);
  const cxd* xd = x.data.data();
  cxd* rd = r.data.data();
  const std::int64_t block = s.inner * s.n;
#pragma omp parallel for collapse(2) schedule(static) if (Parallel)
  for (std::int64_t b = 0; b < s.outer; ++b) {
    for (std::int64_t i = 0; i < s.n; ++i) {
      cxd* out = rd + b * block + i * s.inner;
      for (std::int64_t k = 0; k < s.n; ++k) {
        const cxd mik = m(static_cast<int>(i), static_cast<int>(k));
        const cxd* in = xd + b * block + k * s.inner;
        for (std::int64_t a = 0; a < s.inner; ++a) out[a] += mik * in[a];
      }
    }
  }
  return r;
}

template <bool Parallel>
NDTensor hadamard_impl(const NDTensor& x, const NDTensor& y) {
  if (x.dims != y.dims) throw std::invalid_argument("hadamard shape mismatch");
  NDTensor r = NDTensor::zeros(x.dims);
  const std::int64_t total = r.size();
  const cxd* xd = x.data.data();
  const cxd* yd = y.data.data();
  cxd* rd = r.data.data();
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::int64_t i = 0; i < total; ++i) rd[i] = xd[i] * yd[i];
  return r;
}

}  // namespace

NDTensor mode_product(const Matrix& m, int mode, const NDTensor& x) { return mode_product_impl<true>(m, mode, x); }

NDTensor hadamard(const NDTensor& x, const NDTensor& y) { return hadamard_impl<true>(x, y); }

void scale_along_mode(NDTensor& x, std::span<const double> factors, int mode) {
  const ModeSlab s = slab_for_mode(x.dims, mode);
  if (static_cast<std::int64_t>(factors.size()) != s.n)
    throw std::invalid_argument("scale_along_mode: factor count does not match mode extent");
  cxd* xd = x.data.data();
  const std::int64_t block = s.inner * s.n;
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t b = 0; b < s.outer; ++b) {
    for (std::int64_t k = 0; k < s.n; ++k) {
      const double f = factors[static_cast<std::size_t>(k)];
      cxd* p = xd + b * block + k * s.inner;
      for (std::int64_t a = 0; a < s.inner; ++a) p[a] *= f;
    }
  }
}

void add_scaled(NDTensor& y, cxd alpha, const NDTensor& x) {
  if (x.dims != y.dims) throw std::invalid_argument("add_scaled shape mismatch");
  const std::int64_t total = y.size();
  cxd* yd = y.data.data();
  const cxd* xd = x.data.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) yd[i] += alpha * xd[i];
}

namespace serial {

NDTensor mode_product(const Matrix& m, int mode, const NDTensor& x) { return mode_product_impl<false>(m, mode, x); }

NDTensor hadamard(const NDTensor& x, const NDTensor& y) { return hadamard_impl<false>(x, y); }

}  // namespace serial

}  // namespace ndsylv
