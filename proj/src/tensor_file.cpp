#include "ndsylv/tensor_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace ndsylv {

namespace {

constexpr char kMagic[4] = {'N', 'D', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw TensorFileError("unexpected end of file");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw TensorFileError("unexpected end of file");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_tensor(const std::string& path, const NDTensor& x) {
  checked_total(x.dims);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw TensorFileError("cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(x.dims.size()));
  for (std::int64_t n : x.dims) put_u64(os, static_cast<std::uint64_t>(n));
  for (const cxd& v : x.data) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
  os.flush();
  if (!os) throw TensorFileError("write to '" + path + "' failed");
}

NDTensor read_tensor(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw TensorFileError("cannot open '" + path + "' for reading");
  char magic[4];
  if (!is.read(magic, 4)) throw TensorFileError("'" + path + "': unexpected end of file");
  if (std::memcmp(magic, kMagic, 4) != 0) throw TensorFileError("'" + path + "': not a tensor container");
  const std::uint32_t version = get_u32(is);
  if (version != kVersion)
    throw TensorFileError("'" + path + "': unsupported format version " + std::to_string(version));
  const std::uint32_t order = get_u32(is);
  if (order == 0 || order > 64) throw TensorFileError("'" + path + "': invalid tensor order");
  std::vector<std::int64_t> dims(order);
  for (std::uint32_t j = 0; j < order; ++j) {
    const std::uint64_t n = get_u64(is);
    if (n == 0 || n > static_cast<std::uint64_t>(INT64_MAX)) throw TensorFileError("'" + path + "': invalid extent");
    dims[j] = static_cast<std::int64_t>(n);
  }
  std::int64_t total = 0;
  try {
    total = checked_total(dims);
  } catch (const std::exception&) {
    throw TensorFileError("'" + path + "': extents overflow");
  }
  std::vector<cxd> data(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    data[static_cast<std::size_t>(i)] = cxd(re, im);
  }
  is.peek();
  if (!is.eof()) throw TensorFileError("'" + path + "': trailing bytes after payload");
  return NDTensor::make(std::move(dims), std::move(data));
}

}  // namespace ndsylv
