// Acceptance gate: one line per criterion, exit 0 only if every required
// criterion passes. The extended N=6 advection-diffusion run is skipped
// unless NDSYLV_ACCEPT_EXTENDED=1 (it needs ~1 GB and minutes of CPU).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
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

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string label)
      : number_(number), label_(std::move(label)), t0_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& fail_detail) {
    if (!ok) {
      ok_ = false;
      if (fail_detail_.empty()) fail_detail_ = fail_detail;
    }
  }

  /// Summary shown on the PASS line.
  void note(const std::string& text) { note_ = text; }

  void finish() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    const std::string& detail = ok_ ? note_ : fail_detail_;
    std::printf("[%d] %s %s%s%s  (%.2f s)\n", number_, ok_ ? "PASS" : "FAIL", label_.c_str(),
                detail.empty() ? "" : ": ", detail.c_str(), s);
    std::fflush(stdout);
    if (!ok_) ++g_failures;
  }

 private:
  int number_;
  std::string label_;
  std::string fail_detail_;
  std::string note_;
  std::chrono::steady_clock::time_point t0_;
  bool ok_ = true;
};

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

void criterion_1() {
  Criterion c(1, "reconstruct-and-solve, dims (2,9,33)");
  const GeneratedProblem g = random_problem({2, 9, 33}, 42);
  const SolveResult r = solve(g.problem);
  const double err = max_abs_diff(r.x, g.x_true);
  c.check(err <= 1e-9, fmt("max error %.3e exceeds 1e-9", err));
  c.note(fmt("max error %.3e (bound 1e-9)", err));
  c.finish();
}

void criterion_2() {
  Criterion c(2, "dimension scaling N=2..16, extents all 2");
  double worst = 0.0;
  for (int n = 2; n <= 16; ++n) {
    const std::vector<std::int64_t> dims(static_cast<std::size_t>(n), 2);
    const GeneratedProblem g = random_problem(dims, 4200 + static_cast<std::uint64_t>(n));
    const SolveResult r = solve(g.problem);
    worst = std::max(worst, max_abs_diff(r.x, g.x_true));
    const std::int64_t expected = (std::int64_t{1} << (n - 1)) * n;
    c.check(r.report.backsub_multiplies == expected,
            "multiply count " + std::to_string(r.report.backsub_multiplies) + " != " +
                std::to_string(expected) + " at N=" + std::to_string(n));
  }
  c.check(worst <= 1e-12, fmt("max error %.3e exceeds 1e-12", worst));
  c.note(fmt("max error %.3e (bound 1e-12), multiply counts exact", worst));
  c.finish();
}

void criterion_3() {
  Criterion c(3, "dense Kronecker oracle, 50 seeded problems");
  Xoshiro256pp shapes(999);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n_modes = 2 + i % 3;
    const std::uint64_t spread = n_modes == 2 ? 21 : n_modes == 3 ? 7 : 3;
    std::vector<std::int64_t> dims(static_cast<std::size_t>(n_modes));
    for (auto& d : dims) d = 2 + static_cast<std::int64_t>(shapes.next() % spread);
    const GeneratedProblem g = random_problem(dims, 1000 + static_cast<std::uint64_t>(i));
    const SolveResult r = solve(g.problem);
    worst = std::max(worst, max_abs_diff(r.x, oracle_solve(g.problem)));
  }
  c.check(worst <= 1e-10, fmt("max deviation %.3e exceeds 1e-10", worst));
  c.note(fmt("max deviation %.3e (bound 1e-10)", worst));
  c.finish();
}

void criterion_4() {
  Criterion c(4, "Schur quality, 100 matrices of orders 2..20");
  double worst_res = 0.0, worst_uni = 0.0;
  bool lower_clean = true;
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + i % 19;
    Xoshiro256pp rng(2000 + static_cast<std::uint64_t>(i));
    const Matrix a = random_matrix(n, rng);
    const SchurFactors f = schur(a);
    worst_res = std::max(worst_res, (f.u * f.t * f.u.adjoint() - a).norm_frobenius() /
                                        (1.0 + a.norm_frobenius()));
    worst_uni =
        std::max(worst_uni, (f.u.adjoint() * f.u - Matrix::identity(n)).norm_frobenius() / n);
    for (int col = 0; col < n; ++col)
      for (int row = col + 1; row < n; ++row)
        if (f.t(row, col) != cxd(0.0)) lower_clean = false;
  }
  c.check(worst_res <= 1e-12, fmt("residual %.3e exceeds 1e-12", worst_res));
  c.check(worst_uni <= 1e-12, fmt("unitarity %.3e exceeds 1e-12", worst_uni));
  c.check(lower_clean, "strict lower triangle not exactly zero");
  c.note(fmt("residual %.3e, unitarity %.3e, lower triangle exact", worst_res, worst_uni));
  c.finish();
}

void criterion_5() {
  Criterion c(5, "closed-form ODE vs RK4, dims (2,3,4), t=0.1, dt=2.5e-5");
  const OdeSystem system = random_ode_system({2, 3, 4}, 505);
  const SolveResult closed = propagate(system, 0.1);
  const NDTensor rk = rk4_reference(system, 0.1, 2.5e-5);
  const double disc = max_abs_diff(closed.x, rk);
  c.check(disc <= 1e-10, fmt("discrepancy %.3e exceeds 1e-10", disc));

  // observed convergence order from one step halving at coarse resolution
  const double t_ord = 0.5;
  const SolveResult ref = propagate(system, t_ord);
  const double e1 = max_abs_diff(rk4_reference(system, t_ord, 1e-2), ref.x);
  const double e2 = max_abs_diff(rk4_reference(system, t_ord, 5e-3), ref.x);
  const double order = std::log2(e1 / e2);
  c.check(order >= 3.9, fmt("observed RK4 order %.2f below 3.9", order));
  c.note(fmt("discrepancy %.3e (bound 1e-10), observed RK4 order %.2f", disc, order));
  c.finish();
}

void criterion_6() {
  Criterion c(6, "Hermite differentiation, M=16, b=1.4");
  const HermiteGrid grid = hermite_grid(16, 1.4);
  std::vector<cxd> gauss(grid.nodes.size());
  for (std::size_t i = 0; i < gauss.size(); ++i)
    gauss[i] = std::exp(-grid.nodes[i] * grid.nodes[i]);
  const auto d1g = grid.d1 * std::span<const cxd>(gauss);
  const auto d2g = grid.d2 * std::span<const cxd>(gauss);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < gauss.size(); ++i) {
    const double x = grid.nodes[i];
    const double g = std::exp(-x * x);
    e1 = std::max(e1, std::abs(d1g[i] - cxd(-2.0 * x * g)));
    e2 = std::max(e2, std::abs(d2g[i] - cxd((4.0 * x * x - 2.0) * g)));
  }
  c.check(e1 <= 1e-13, fmt("first derivative error %.3e exceeds 1e-13", e1));
  c.check(e2 <= 5e-13, fmt("second derivative error %.3e exceeds 5e-13", e2));
  c.note(fmt("derivative errors %.3e and %.3e (bounds 1e-13, 5e-13)", e1, e2));
  c.finish();
}

double advdiff_error(int n_modes) {
  const HermiteGrid grid = hermite_grid(16, 1.4);
  OdeSystem system = build_advdiff_system(grid, n_modes);
  for (cxd& v : system.initial.data) v *= 2.0;
  SolveOptions options;
  options.real_output = true;
  const SolveResult r = propagate(system, 1.0, options);
  return max_abs_diff(r.x, advdiff_exact(grid, n_modes, 1.0));
}

void criterion_7() {
  {
    Criterion c(7, "advection-diffusion N=3, M=16, b=1.4, t=1");
    const double err = advdiff_error(3);
    c.check(err <= 1e-10, fmt("error %.3e exceeds 1e-10", err));
    c.note(fmt("error %.3e (bound 1e-10)", err));
    c.finish();
  }
  const char* extended = std::getenv("NDSYLV_ACCEPT_EXTENDED");
  if (extended != nullptr && std::string(extended) == "1") {
    Criterion c(7, "advection-diffusion extended N=6 (optional)");
    const double err = advdiff_error(6);
    c.check(err <= 1e-12, fmt("error %.3e exceeds 1e-12", err));
    c.note(fmt("error %.3e (bound 1e-12)", err));
    c.finish();
  } else {
    std::printf(
        "[7] SKIP advection-diffusion extended N=6 (optional): set NDSYLV_ACCEPT_EXTENDED=1 to run\n");
  }
}

void criterion_8() {
  Criterion c(8, "property suite");
  {
    // cursor enumeration agrees with the flat layout
    const std::vector<std::int64_t> dims = {3, 2, 4};
    auto cur = MultiIndexCursor::start(dims);
    std::int64_t expected = 24;
    bool agreed = true;
    while (!cur.exhausted) {
      if (cur.index != expected || linear_index(dims, cur.current) != expected) agreed = false;
      --expected;
      cur.next();
    }
    c.check(agreed && expected == 0, "cursor / linear_index disagreement");
  }
  {
    // mode products along distinct modes commute; same mode composes
    Xoshiro256pp rng(808);
    const NDTensor x = random_tensor({3, 4, 2}, rng);
    const Matrix p = random_matrix(4, rng), q = random_matrix(4, rng), s = random_matrix(2, rng);
    const double commute = max_abs_diff(mode_product(s, 3, mode_product(p, 2, x)),
                                        mode_product(p, 2, mode_product(s, 3, x)));
    const double compose =
        max_abs_diff(mode_product(q, 2, mode_product(p, 2, x)), mode_product(q * p, 2, x));
    c.check(commute <= 1e-13, fmt("mode products fail to commute: %.3e", commute));
    c.check(compose <= 1e-12, fmt("mode products fail to compose: %.3e", compose));
  }
  {
    // forward then inverse transform is the identity
    Xoshiro256pp rng(809);
    const NDTensor x = random_tensor({3, 3, 3}, rng);
    std::vector<SchurFactors> factors;
    for (int j = 0; j < 3; ++j) factors.push_back(schur(random_matrix(3, rng)));
    const NDTensor round = inverse_transform(factors, forward_transform(factors, x));
    const double err = max_abs_diff(round, x);
    c.check(err <= 1e-12, fmt("transform round trip error %.3e", err));
  }
  {
    const std::vector<std::int64_t> dims = {3, 4, 5};
    const std::int64_t expected = 60 * (5 * 12 - 3 + 1);
    c.check(flop_estimate(dims) == expected, "flop_estimate closed form mismatch");
  }
  {
    // normal coefficients: diagonal route equals the general route
    Xoshiro256pp rng(810);
    std::vector<Matrix> as;
    const std::vector<std::int64_t> dims = {4, 3};
    for (std::int64_t n : dims) {
      std::vector<cxd> eig(static_cast<std::size_t>(n));
      for (auto& v : eig) v = cxd(1.0 + rng.uniform(), rng.uniform());
      const SchurFactors f = schur(random_matrix(static_cast<int>(n), rng));
      as.push_back(f.u * Matrix::diagonal(eig) * f.u.adjoint());
    }
    SylvesterProblem p{as, random_tensor(dims, rng)};
    SolveOptions general;
    general.allow_fast_path = false;
    const SolveResult fast = solve(p);
    const SolveResult slow = solve(p, general);
    const double gap = max_abs_diff(fast.x, slow.x);
    c.check(fast.report.used_normal_fast_path, "fast path not taken for normal coefficients");
    c.check(gap <= 1e-11, fmt("fast path deviates from general route: %.3e", gap));
  }
  {
    // exp(t(A2 (+) A1)) = exp(tA2) (x) exp(tA1)
    Xoshiro256pp rng(811);
    const Matrix a1 = random_matrix(2, rng), a2 = random_matrix(2, rng);
    const double t = 0.7;
    const Matrix lhs = matrix_exp(kron_sum(std::vector<Matrix>{a1, a2}), t);
    const Matrix rhs = kron_product(matrix_exp(a2, t), matrix_exp(a1, t));
    const double err = max_abs_diff(lhs, rhs) / (1.0 + rhs.max_abs());
    c.check(err <= 1e-10, fmt("Kronecker-sum exponential identity error %.3e", err));
  }
  c.note("cursor, mode products, transforms, flop form, fast path, exponential identity");
  c.finish();
}

void criterion_9() {
  Criterion c(9, "singular operator detection and CLI exit code");
  SylvesterProblem p;
  p.coefficients.push_back(Matrix::diagonal(std::vector<cxd>{1.0, -1.0}));
  p.coefficients.push_back(Matrix::diagonal(std::vector<cxd>{-1.0, 1.0}));
  Xoshiro256pp rng(900);
  p.rhs = random_tensor({2, 2}, rng);
  bool threw = false;
  std::string index_text;
  try {
    solve(p);
  } catch (const SingularOperatorError& e) {
    threw = true;
    index_text = detail::format_multi_index(e.multi_index());
    c.check(e.multi_index().size() == 2, "multi-index does not name both modes");
    c.check(std::string(e.what()).find("multi-index") != std::string::npos,
            "message does not name the multi-index");
  }
  c.check(threw, "no SingularOperatorError raised");

  const auto dir = std::filesystem::temp_directory_path() / "ndsylv_acceptance";
  std::filesystem::create_directories(dir);
  write_tensor((dir / "a1.ndt").string(),
               NDTensor::make({2, 2}, {cxd(1.0), cxd(0.0), cxd(0.0), cxd(-1.0)}));
  write_tensor((dir / "a2.ndt").string(),
               NDTensor::make({2, 2}, {cxd(-1.0), cxd(0.0), cxd(0.0), cxd(1.0)}));
  write_tensor((dir / "b.ndt").string(), p.rhs);
  const std::string cmd = std::string(NDSYLV_CLI_PATH) + " solve --coeffs " +
                          (dir / "a1.ndt").string() + "," + (dir / "a2.ndt").string() + " --rhs " +
                          (dir / "b.ndt").string() + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  c.check(code == 2, "CLI exit code " + std::to_string(code) + " != 2");
  c.note("throws at " + index_text + ", CLI exit 2");
  c.finish();
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("acceptance: all required criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
