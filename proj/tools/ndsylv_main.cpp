// Batch front end: solve | ode | advdiff | bench | selftest.
//
// Exit codes: 0 success, 2 singular operator, 3 file I/O or format error,
// 4 memory budget exceeded, 1 anything else.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "ndsylv/hermite.hpp"
#include "ndsylv/kron.hpp"
#include "ndsylv/ode.hpp"
#include "ndsylv/rng.hpp"
#include "ndsylv/sylvester.hpp"
#include "ndsylv/tensor_file.hpp"

using namespace ndsylv;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string dims_string(std::span<const std::int64_t> dims) {
  std::string s;
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (j > 0) s += ',';
    s += std::to_string(dims[j]);
  }
  return s;
}

Matrix matrix_from_file(const std::string& path) {
  const NDTensor t = read_tensor(path);
  if (t.order() != 2) throw TensorFileError("'" + path + "': expected an order-2 tensor, got order " + std::to_string(t.order()));
  Matrix m(static_cast<int>(t.dims[0]), static_cast<int>(t.dims[1]));
  std::copy(t.data.begin(), t.data.end(), m.data());
  return m;
}

std::vector<Matrix> coefficients_from_files(const std::vector<std::string>& paths) {
  std::vector<Matrix> as;
  as.reserve(paths.size());
  for (const auto& p : paths) as.push_back(matrix_from_file(p));
  return as;
}

void check_budget(std::span<const std::int64_t> dims, int live_buffers, std::uint64_t max_bytes) {
  std::uint64_t need = 16 * static_cast<std::uint64_t>(live_buffers);
  for (std::int64_t n : dims) {
    if (n <= 0) throw std::invalid_argument("extents must be positive");
    if (__builtin_mul_overflow(need, static_cast<std::uint64_t>(n), &need))
      throw MemoryBudgetError("projected allocation overflows the address space");
  }
  if (need > max_bytes)
    throw MemoryBudgetError("projected " + std::to_string(need) + " bytes for " +
                            std::to_string(live_buffers) + " buffers of shape (" +
                            dims_string(dims) + ") exceeds the budget of " +
                            std::to_string(max_bytes) + " bytes");
}

void print_report(const SolveReport& r) {
  std::printf("min |denominator|: %.6e%s\n", r.min_abs_denominator,
              r.used_normal_fast_path ? "  (diagonal fast path)" : "");
  std::printf("flops: transform+backsub %lld, schur bound %lld\n",
              static_cast<long long>(r.flop_estimate), static_cast<long long>(r.schur_flop_estimate));
  std::printf("timings: schur %.6f s, transform %.6f s, backsub %.6f s, inverse %.6f s, total %.6f s\n",
              r.schur_seconds, r.transform_seconds, r.backsub_seconds, r.inverse_seconds, r.total_seconds);
}

struct CommonArgs {
  std::vector<std::int64_t> dims;
  std::uint64_t seed = 1;
  bool random = false;
  std::vector<std::string> coeff_paths;
  std::string rhs_path;
  std::string x0_path;
  std::string out_path;
  double tol = 0.0;
  std::uint64_t max_mem = 8589934592ULL;
};

int run_solve(const CommonArgs& args) {
  SylvesterProblem problem;
  const NDTensor* truth = nullptr;
  GeneratedProblem generated;
  if (args.random) {
    if (args.dims.empty()) throw std::invalid_argument("--random needs --dims");
    check_budget(args.dims, 3, args.max_mem);
    generated = random_problem(args.dims, args.seed);
    problem = generated.problem;
    truth = &generated.x_true;
  } else {
    if (args.coeff_paths.empty() || args.rhs_path.empty())
      throw std::invalid_argument("need --coeffs and --rhs, or --random");
    problem.coefficients = coefficients_from_files(args.coeff_paths);
    problem.rhs = read_tensor(args.rhs_path);
    check_budget(problem.rhs.dims, 3, args.max_mem);
  }

  SolveOptions options;
  options.singular_tol = args.tol;
  const SolveResult result = solve(problem, options);

  std::printf("dims: %s  (total %lld)\n", dims_string(problem.rhs.dims).c_str(),
              static_cast<long long>(problem.rhs.size()));
  if (truth) std::printf("max error vs known solution: %.3e\n", max_abs_diff(result.x, *truth));
  const NDTensor reconstructed = apply_operator(problem.coefficients, result.x);
  std::printf("residual: %.3e\n", max_abs_diff(reconstructed, problem.rhs));
  print_report(result.report);
  if (!args.out_path.empty()) {
    write_tensor(args.out_path, result.x);
    std::printf("wrote %s\n", args.out_path.c_str());
  }
  return 0;
}

int run_ode(const CommonArgs& args, double t, double dt) {
  OdeSystem system;
  if (args.random) {
    if (args.dims.empty()) throw std::invalid_argument("--random needs --dims");
    check_budget(args.dims, 3, args.max_mem);
    system = random_ode_system(args.dims, args.seed);
  } else {
    if (args.coeff_paths.empty() || args.rhs_path.empty() || args.x0_path.empty())
      throw std::invalid_argument("need --coeffs, --rhs and --x0, or --random");
    system.coefficients = coefficients_from_files(args.coeff_paths);
    system.forcing = read_tensor(args.rhs_path);
    system.initial = read_tensor(args.x0_path);
    check_budget(system.initial.dims, 3, args.max_mem);
  }

  auto t0 = std::chrono::steady_clock::now();
  const SolveResult closed = propagate(system, t);
  const double closed_s = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  const NDTensor rk = rk4_reference(system, t, dt);
  const double rk_s = seconds_since(t0);

  std::printf("dims: %s  t=%g  dt=%g\n", dims_string(system.initial.dims).c_str(), t, dt);
  std::printf("closed form: %.6f s\n", closed_s);
  std::printf("rk4: %.6f s  (%lld steps)\n", rk_s,
              static_cast<long long>(std::ceil(std::abs(t) / dt)));
  std::printf("max discrepancy: %.3e\n", max_abs_diff(closed.x, rk));
  if (!args.out_path.empty()) {
    write_tensor(args.out_path, closed.x);
    std::printf("wrote %s\n", args.out_path.c_str());
  }
  return 0;
}

int run_advdiff(int n_modes, int m, double b, double t, const CommonArgs& args) {
  if (n_modes < 1) throw std::invalid_argument("--n must be at least 1");
  const std::vector<std::int64_t> dims(static_cast<std::size_t>(n_modes), m);
  check_budget(dims, 3, args.max_mem);

  auto t0 = std::chrono::steady_clock::now();
  const HermiteGrid grid = hermite_grid(m, b);
  OdeSystem system = build_advdiff_system(grid, n_modes, args.max_mem);
  // The manufactured solution (1+e^t)exp(-x.x) starts at twice the Gaussian.
  for (cxd& v : system.initial.data) v *= 2.0;
  const double setup_s = seconds_since(t0);

  SolveOptions options;
  options.real_output = true;
  options.singular_tol = args.tol;
  t0 = std::chrono::steady_clock::now();
  const SolveResult result = propagate(system, t, options);
  const double run_s = seconds_since(t0);

  const NDTensor exact = advdiff_exact(grid, n_modes, t);
  std::printf("advdiff: N=%d M=%d b=%g t=%g  (total %lld)\n", n_modes, m, b, t,
              static_cast<long long>(result.x.size()));
  std::printf("setup: %.6f s, propagate: %.6f s\n", setup_s, run_s);
  std::printf("error vs exact: %.3e\n", max_abs_diff(result.x, exact));
  if (!args.out_path.empty()) {
    write_tensor(args.out_path, result.x);
    std::printf("wrote %s\n", args.out_path.c_str());
  }
  return 0;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto colon = text.find(':');
  const auto dots = text.find("..");
  std::string lo = text, hi = text;
  if (colon != std::string::npos) {
    lo = text.substr(0, colon);
    hi = text.substr(colon + 1);
  } else if (dots != std::string::npos) {
    lo = text.substr(0, dots);
    hi = text.substr(dots + 2);
  }
  const int a = std::stoi(lo), b = std::stoi(hi);
  if (a < 1 || b < a) throw std::invalid_argument("--n-range wants LO:HI with 1 <= LO <= HI");
  return {a, b};
}

int run_bench(const std::string& range_text, std::uint64_t seed, const std::string& csv_path,
              std::uint64_t max_mem) {
  const auto [n_lo, n_hi] = parse_n_range(range_text);

  std::ofstream file;
  if (!csv_path.empty()) {
    file.open(csv_path, std::ios::trunc);
    if (!file) throw TensorFileError("cannot open '" + csv_path + "' for writing");
  }
  std::ostream& out = csv_path.empty() ? std::cout : file;

  out << "# ndsylv bench csv 1\n";
  out << "N,total_size,schur_s,transform_s,backsub_s,inverse_s,total_s,max_error\n";
  for (int n = n_lo; n <= n_hi; ++n) {
    const std::vector<std::int64_t> dims(static_cast<std::size_t>(n), 2);
    check_budget(dims, 3, max_mem);
    const GeneratedProblem g = random_problem(dims, seed + static_cast<std::uint64_t>(n));
    const SolveResult r = solve(g.problem);
    char row[256];
    std::snprintf(row, sizeof row, "%d,%lld,%.6e,%.6e,%.6e,%.6e,%.6e,%.3e\n", n,
                  static_cast<long long>(g.problem.rhs.size()), r.report.schur_seconds,
                  r.report.transform_seconds, r.report.backsub_seconds, r.report.inverse_seconds,
                  r.report.total_seconds, max_abs_diff(r.x, g.x_true));
    out << row;
  }
  out.flush();
  if (!out) throw TensorFileError("writing benchmark output failed");
  return 0;
}

int run_selftest() {
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value, double bound) {
    std::printf("%-28s %s  (%.3e, bound %.1e)\n", name, ok ? "ok" : "FAIL", value, bound);
    if (!ok) ++failures;
  };

  {
    const std::vector<std::vector<std::int64_t>> shapes = {
        {2, 3, 4}, {3, 3, 3}, {2, 2, 2, 2}, {5, 4}, {4, 4, 3}};
    double worst_oracle = 0.0, worst_error = 0.0;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
      const GeneratedProblem g = random_problem(shapes[k], 201 + k);
      const SolveResult r = solve(g.problem);
      worst_error = std::max(worst_error, max_abs_diff(r.x, g.x_true));
      worst_oracle = std::max(worst_oracle, max_abs_diff(r.x, oracle_solve(g.problem)));
    }
    report("solve vs known solution", worst_error <= 1e-9, worst_error, 1e-9);
    report("solve vs dense oracle", worst_oracle <= 1e-10, worst_oracle, 1e-10);
  }

  {
    double worst_residual = 0.0, worst_unitary = 0.0;
    for (int n = 2; n <= 12; ++n) {
      Xoshiro256pp rng(300 + static_cast<std::uint64_t>(n));
      const Matrix a = random_matrix(n, rng);
      const SchurFactors f = schur(a);
      const Matrix residual = f.u * f.t * f.u.adjoint() - a;
      worst_residual = std::max(worst_residual, residual.norm_frobenius() / (1.0 + a.norm_frobenius()));
      const Matrix gram = f.u.adjoint() * f.u - Matrix::identity(n);
      worst_unitary = std::max(worst_unitary, gram.norm_frobenius() / n);
    }
    report("schur residual", worst_residual <= 1e-12, worst_residual, 1e-12);
    report("schur unitarity", worst_unitary <= 1e-12, worst_unitary, 1e-12);
  }

  {
    const OdeSystem system = random_ode_system({2, 3}, 401);
    const SolveResult closed = propagate(system, 0.2);
    const NDTensor rk = rk4_reference(system, 0.2, 1e-3);
    const double diff = max_abs_diff(closed.x, rk);
    report("closed form vs rk4", diff <= 1e-8, diff, 1e-8);
  }

  {
    const HermiteGrid grid = hermite_grid(16, 1.4);
    double d1_err = 0.0, d2_err = 0.0;
    std::vector<cxd> gauss(grid.nodes.size());
    for (std::size_t i = 0; i < gauss.size(); ++i) gauss[i] = std::exp(-grid.nodes[i] * grid.nodes[i]);
    const auto d1g = grid.d1 * std::span<const cxd>(gauss);
    const auto d2g = grid.d2 * std::span<const cxd>(gauss);
    for (std::size_t i = 0; i < gauss.size(); ++i) {
      const double x = grid.nodes[i];
      const double g = std::exp(-x * x);
      d1_err = std::max(d1_err, std::abs(d1g[i] - cxd(-2.0 * x * g)));
      d2_err = std::max(d2_err, std::abs(d2g[i] - cxd((4.0 * x * x - 2.0) * g)));
    }
    report("hermite first derivative", d1_err <= 1e-13, d1_err, 1e-13);
    report("hermite second derivative", d2_err <= 5e-13, d2_err, 5e-13);
  }

  std::printf("selftest: %s\n", failures == 0 ? "all ok" : "FAILURES");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"N-dimensional Sylvester tensor equation solver"};
  app.require_subcommand(1);

  CommonArgs args;
  double t = 0.0, dt = 2.5e-5;
  int advdiff_n = 3, hermite_m = 16;
  double hermite_b = 1.4, advdiff_t = 1.0;
  std::string n_range = "2:16", csv_path;

  auto add_common = [&](CLI::App* cmd, bool with_x0) {
    cmd->add_option("--dims", args.dims, "mode extents, comma separated")->delimiter(',');
    cmd->add_option("--seed", args.seed, "PRNG seed for --random");
    cmd->add_flag("--random", args.random, "draw a seeded random instance");
    cmd->add_option("--coeffs", args.coeff_paths, "coefficient matrix files, one per mode")
        ->delimiter(',');
    cmd->add_option("--rhs", args.rhs_path, with_x0 ? "forcing tensor file" : "right-hand side tensor file");
    if (with_x0) cmd->add_option("--x0", args.x0_path, "initial state tensor file");
    cmd->add_option("--out", args.out_path, "write the solution tensor here");
    cmd->add_option("--tol", args.tol, "singular denominator tolerance (default: automatic)");
    cmd->add_option("--max-mem", args.max_mem, "memory budget in bytes");
  };

  CLI::App* cmd_solve = app.add_subcommand("solve", "solve sum_j A_j along mode j of X = B");
  add_common(cmd_solve, false);

  CLI::App* cmd_ode = app.add_subcommand("ode", "propagate dX/dt = sum_j A_j X + B and compare with RK4");
  add_common(cmd_ode, true);
  cmd_ode->add_option("--t", t, "evaluation time")->required();
  cmd_ode->add_option("--dt", dt, "RK4 step");

  CLI::App* cmd_advdiff = app.add_subcommand("advdiff", "Hermite advection-diffusion experiment");
  cmd_advdiff->add_option("--n", advdiff_n, "number of space dimensions");
  cmd_advdiff->add_option("--hermite-m", hermite_m, "collocation points per dimension");
  cmd_advdiff->add_option("--hermite-b", hermite_b, "node scaling parameter");
  cmd_advdiff->add_option("--t", advdiff_t, "final time");
  cmd_advdiff->add_option("--out", args.out_path, "write the solution tensor here");
  cmd_advdiff->add_option("--tol", args.tol, "singular denominator tolerance");
  cmd_advdiff->add_option("--max-mem", args.max_mem, "memory budget in bytes");

  CLI::App* cmd_bench = app.add_subcommand("bench", "dimension-scaling benchmark, CSV output");
  cmd_bench->add_option("--n-range", n_range, "dimensions to sweep, LO:HI");
  cmd_bench->add_option("--seed", args.seed, "base PRNG seed; each N uses seed+N");
  cmd_bench->add_option("--csv", csv_path, "write CSV here instead of standard output");
  cmd_bench->add_option("--max-mem", args.max_mem, "memory budget in bytes");

  CLI::App* cmd_selftest = app.add_subcommand("selftest", "fixed seeded verification battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_solve->parsed()) return run_solve(args);
    if (cmd_ode->parsed()) return run_ode(args, t, dt);
    if (cmd_advdiff->parsed()) return run_advdiff(advdiff_n, hermite_m, hermite_b, advdiff_t, args);
    if (cmd_bench->parsed()) return run_bench(n_range, args.seed, csv_path, args.max_mem);
    if (cmd_selftest->parsed()) return run_selftest();
  } catch (const SingularOperatorError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const TensorFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const MemoryBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
