#include <doctest.h>

#include "ndsylv/kernels.hpp"
#include "ndsylv/rng.hpp"
#include "oracle_kernels.hpp"

using namespace ndsylv;

namespace {

std::vector<std::int64_t> idx(std::initializer_list<std::int64_t> v) { return {v}; }

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("identity matrix leaves the tensor unchanged") {
    Xoshiro256pp rng(11);
    const NDTensor x = random_tensor(idx({3, 4, 2}), rng);
    for (int mode = 1; mode <= 3; ++mode) {
      const NDTensor r = mode_product(Matrix::identity(static_cast<int>(x.dims[mode - 1])), mode, x);
      CHECK(max_abs_diff(r, x) == 0.0);
    }
  }

  TEST_CASE("mode of extent one is a scalar multiply") {
    Xoshiro256pp rng(12);
    const NDTensor x = random_tensor(idx({3, 1, 2}), rng);
    Matrix m(1, 1);
    m(0, 0) = cxd(2.0, -1.0);
    const NDTensor r = mode_product(m, 2, x);
    for (std::size_t i = 0; i < x.data.size(); ++i) CHECK(r.data[i] == cxd(2.0, -1.0) * x.data[i]);
  }

  TEST_CASE("row swap along mode 2") {
    NDTensor x = NDTensor::zeros(idx({2, 2}));
    x.at(idx({1, 1})) = 1.0;
    x.at(idx({2, 1})) = 2.0;
    x.at(idx({1, 2})) = 3.0;
    x.at(idx({2, 2})) = 4.0;
    const Matrix swap = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const NDTensor r = mode_product(swap, 2, x);
    CHECK(r.at(idx({1, 1})) == cxd(3.0));
    CHECK(r.at(idx({2, 1})) == cxd(4.0));
    CHECK(r.at(idx({1, 2})) == cxd(1.0));
    CHECK(r.at(idx({2, 2})) == cxd(2.0));
  }

  TEST_CASE("matches the entrywise definition") {
    Xoshiro256pp rng(13);
    const NDTensor x = random_tensor(idx({4, 3, 5}), rng);
    for (int mode = 1; mode <= 3; ++mode) {
      const Matrix m = random_matrix(static_cast<int>(x.dims[mode - 1]), rng);
      const NDTensor fast = mode_product(m, mode, x);
      const NDTensor slow = oracle::mode_product(m, mode, x);
      CHECK(max_abs_diff(fast, slow) <= 1e-14 * max_abs(slow));
    }
  }

  TEST_CASE("parallel and serial kernels agree bitwise") {
    Xoshiro256pp rng(14);
    const NDTensor x = random_tensor(idx({6, 5, 4}), rng);
    for (int mode = 1; mode <= 3; ++mode) {
      const Matrix m = random_matrix(static_cast<int>(x.dims[mode - 1]), rng);
      const NDTensor par = mode_product(m, mode, x);
      const NDTensor ser = serial::mode_product(m, mode, x);
      CHECK(max_abs_diff(par, ser) == 0.0);
    }
    const NDTensor y = random_tensor(x.dims, rng);
    CHECK(max_abs_diff(hadamard(x, y), serial::hadamard(x, y)) == 0.0);
  }

  TEST_CASE("repeated runs are deterministic") {
    Xoshiro256pp rng(15);
    const NDTensor x = random_tensor(idx({8, 7, 6}), rng);
    const Matrix m = random_matrix(7, rng);
    const NDTensor first = mode_product(m, 2, x);
    const NDTensor second = mode_product(m, 2, x);
    CHECK(max_abs_diff(first, second) == 0.0);
  }

  TEST_CASE("products along the same mode compose") {
    Xoshiro256pp rng(16);
    const NDTensor x = random_tensor(idx({4, 5, 3}), rng);
    const Matrix m1 = random_matrix(5, rng);
    const Matrix m2 = random_matrix(5, rng);
    const NDTensor lhs = mode_product(m1, 2, mode_product(m2, 2, x));
    const NDTensor rhs = mode_product(m1 * m2, 2, x);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * max_abs(rhs));
  }

  TEST_CASE("products along distinct modes commute") {
    Xoshiro256pp rng(17);
    const NDTensor x = random_tensor(idx({4, 5, 3}), rng);
    const Matrix m1 = random_matrix(4, rng);
    const Matrix m3 = random_matrix(3, rng);
    const NDTensor lhs = mode_product(m1, 1, mode_product(m3, 3, x));
    const NDTensor rhs = mode_product(m3, 3, mode_product(m1, 1, x));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * max_abs(rhs));
  }

  TEST_CASE("shape validation") {
    Xoshiro256pp rng(18);
    const NDTensor x = random_tensor(idx({3, 4}), rng);
    CHECK_THROWS_AS(mode_product(Matrix::identity(4), 1, x), std::invalid_argument);
    CHECK_THROWS_AS(mode_product(Matrix::identity(3), 0, x), std::invalid_argument);
    CHECK_THROWS_AS(mode_product(Matrix::identity(3), 3, x), std::invalid_argument);
    CHECK_THROWS_AS(mode_product(Matrix(3, 4), 1, x), std::invalid_argument);
    CHECK_THROWS_AS(hadamard(x, random_tensor(idx({4, 3}), rng)), std::invalid_argument);
  }

  TEST_CASE("hadamard multiplies entrywise") {
    NDTensor x = NDTensor::zeros(idx({2, 2}));
    NDTensor y = NDTensor::zeros(idx({2, 2}));
    x.data = {cxd(1, 1), cxd(2, 0), cxd(0, 3), cxd(-1, 2)};
    y.data = {cxd(2, 0), cxd(0, 1), cxd(1, 1), cxd(3, -1)};
    const NDTensor r = hadamard(x, y);
    CHECK(r.data[0] == cxd(2, 2));
    CHECK(r.data[1] == cxd(0, 2));
    CHECK(r.data[2] == cxd(-3, 3));
    CHECK(r.data[3] == cxd(-1, 7));
  }

  TEST_CASE("scale_along_mode equals a diagonal mode product") {
    Xoshiro256pp rng(19);
    NDTensor x = random_tensor(idx({3, 4, 2}), rng);
    const std::vector<double> factors{0.5, -2.0, 3.0, 1.25};
    std::vector<cxd> diag(factors.begin(), factors.end());
    const NDTensor expected = mode_product(Matrix::diagonal(diag), 2, x);
    scale_along_mode(x, factors, 2);
    CHECK(max_abs_diff(x, expected) <= 1e-15 * max_abs(expected));
  }

  TEST_CASE("add_scaled accumulates") {
    Xoshiro256pp rng(20);
    NDTensor y = random_tensor(idx({2, 3}), rng);
    const NDTensor y0 = y;
    const NDTensor x = random_tensor(idx({2, 3}), rng);
    add_scaled(y, cxd(0.0, 2.0), x);
    for (std::size_t i = 0; i < y.data.size(); ++i) CHECK(y.data[i] == y0.data[i] + cxd(0.0, 2.0) * x.data[i]);
  }
}
