// Serial vs OpenMP timings for the hot kernels and the full solver.
// Build requires a system Google Benchmark; the target is skipped otherwise.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "ndsylv/kernels.hpp"
#include "ndsylv/rng.hpp"
#include "ndsylv/sylvester.hpp"

using namespace ndsylv;

namespace {

struct ModeProductCase {
  std::vector<std::int64_t> dims;
  int mode;
};

const ModeProductCase kCases[] = {
    {{64, 64, 64}, 1},
    {{64, 64, 64}, 2},
    {{64, 64, 64}, 3},
    {{16, 16, 16, 16, 16}, 3},
};

void bm_mode_product_parallel(benchmark::State& state) {
  const auto& c = kCases[state.range(0)];
  Xoshiro256pp rng(1);
  const NDTensor x = random_tensor(c.dims, rng);
  const Matrix a = random_matrix(static_cast<int>(c.dims[static_cast<std::size_t>(c.mode - 1)]), rng);
  for (auto _ : state) {
    NDTensor y = mode_product(a, c.mode, x);
    benchmark::DoNotOptimize(y.data.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}

void bm_mode_product_serial(benchmark::State& state) {
  const auto& c = kCases[state.range(0)];
  Xoshiro256pp rng(1);
  const NDTensor x = random_tensor(c.dims, rng);
  const Matrix a = random_matrix(static_cast<int>(c.dims[static_cast<std::size_t>(c.mode - 1)]), rng);
  for (auto _ : state) {
    NDTensor y = serial::mode_product(a, c.mode, x);
    benchmark::DoNotOptimize(y.data.data());
  }
  state.SetItemsProcessed(state.iterations() * x.size());
}

void bm_hadamard_parallel(benchmark::State& state) {
  Xoshiro256pp rng(2);
  const std::vector<std::int64_t> dims = {64, 64, 64};
  const NDTensor a = random_tensor(dims, rng);
  const NDTensor b = random_tensor(dims, rng);
  for (auto _ : state) {
    NDTensor y = hadamard(a, b);
    benchmark::DoNotOptimize(y.data.data());
  }
  state.SetItemsProcessed(state.iterations() * a.size());
}

void bm_hadamard_serial(benchmark::State& state) {
  Xoshiro256pp rng(2);
  const std::vector<std::int64_t> dims = {64, 64, 64};
  const NDTensor a = random_tensor(dims, rng);
  const NDTensor b = random_tensor(dims, rng);
  for (auto _ : state) {
    NDTensor y = serial::hadamard(a, b);
    benchmark::DoNotOptimize(y.data.data());
  }
  state.SetItemsProcessed(state.iterations() * a.size());
}

void bm_solve(benchmark::State& state) {
  const auto n = state.range(0);
  const GeneratedProblem g = random_problem({n, n, n}, 3);
  for (auto _ : state) {
    SolveResult r = solve(g.problem);
    benchmark::DoNotOptimize(r.x.data.data());
  }
}

}  // namespace

BENCHMARK(bm_mode_product_parallel)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_mode_product_serial)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_hadamard_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_hadamard_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_solve)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
