#pragma once

#include <complex>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndsylv {

using cxd = std::complex<double>;

namespace detail {

inline std::string format_multi_index(const std::vector<std::int64_t>& multi) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < multi.size(); ++j) {
    if (j > 0) os << ", ";
    os << multi[j];
  }
  os << ')';
  return os.str();
}

}  // namespace detail

/// The eigenvalue sum of the coefficient matrices is (numerically) zero at
/// some multi-index, so the operator cannot be inverted there.
class SingularOperatorError : public std::runtime_error {
 public:
  SingularOperatorError(std::vector<std::int64_t> multi_index, cxd denominator)
      : std::runtime_error("singular operator: denominator " +
                           std::to_string(denominator.real()) + (denominator.imag() < 0 ? "" : "+") +
                           std::to_string(denominator.imag()) + "i at multi-index " +
                           detail::format_multi_index(multi_index)),
        multi_(std::move(multi_index)),
        den_(denominator) {}

  const std::vector<std::int64_t>& multi_index() const noexcept { return multi_; }
  cxd denominator() const noexcept { return den_; }

 private:
  std::vector<std::int64_t> multi_;
  cxd den_;
};

/// Pivot fell below the elimination threshold.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// QR iteration exhausted its sweep budget without deflating.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An integration produced Inf or NaN entries.
class NonFiniteStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested allocation exceeds the configured memory budget.
class MemoryBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable tensor container file.
class TensorFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ndsylv
