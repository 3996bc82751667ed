#pragma once

#include <string>

#include "ndsylv/tensor.hpp"

namespace ndsylv {

// Container layout, all little-endian:
//   bytes 0..3   magic "NDT1"
//   u32          format version, currently 1
//   u32          order N
//   u64 * N      extents n_1 .. n_N
//   f64 * 2*total  entries in column-major order, real then imaginary

/// Throws TensorFileError on I/O failure.
void write_tensor(const std::string& path, const NDTensor& x);

/// Throws TensorFileError on I/O failure, bad magic, unsupported version,
/// invalid extents, or a payload whose length does not match the header.
NDTensor read_tensor(const std::string& path);

}  // namespace ndsylv
