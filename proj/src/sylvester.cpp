#include "ndsylv/sylvester.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace ndsylv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_problem(const SylvesterProblem& p) {
  const int n_modes = p.rhs.order();
  if (n_modes < 2) throw std::invalid_argument("problem order must be at least 2");
  if (static_cast<int>(p.coefficients.size()) != n_modes)
    throw std::invalid_argument("coefficient count does not match tensor order");
  for (int j = 0; j < n_modes; ++j) {
    const Matrix& a = p.coefficients[static_cast<std::size_t>(j)];
    if (!a.square() || a.rows() != p.rhs.dims[static_cast<std::size_t>(j)])
      throw std::invalid_argument("coefficient " + std::to_string(j + 1) + " does not match mode extent");
  }
}

double default_singular_tol(std::span<const SchurFactors> factors) {
  double s = 0.0;
  for (const SchurFactors& f : factors) s += f.t.norm_frobenius();
  return std::numeric_limits<double>::epsilon() * s;
}

bool numerically_diagonal(const Matrix& t_mat) {
  double off2 = 0.0;
  for (int j = 0; j < t_mat.cols(); ++j)
    for (int i = 0; i < j; ++i) off2 += std::norm(t_mat(i, j));
  return std::sqrt(off2) <= 1e-12 * (1.0 + t_mat.norm_frobenius());
}

}  // namespace

NDTensor apply_operator(std::span<const Matrix> coefficients, const NDTensor& x) {
  if (coefficients.size() != static_cast<std::size_t>(x.order()))
    throw std::invalid_argument("coefficient count does not match tensor order");
  NDTensor r = NDTensor::zeros(x.dims);
  for (int j = 1; j <= x.order(); ++j) {
    NDTensor term = mode_product(coefficients[static_cast<std::size_t>(j - 1)], j, x);
    add_scaled(r, 1.0, term);
  }
  return r;
}

NDTensor forward_transform(std::span<const SchurFactors> factors, NDTensor b) {
  if (factors.size() != static_cast<std::size_t>(b.order()))
    throw std::invalid_argument("factor count does not match tensor order");
  for (int j = 1; j <= b.order(); ++j)
    b = mode_product(factors[static_cast<std::size_t>(j - 1)].u.adjoint(), j, b);
  return b;
}

NDTensor inverse_transform(std::span<const SchurFactors> factors, NDTensor y) {
  if (factors.size() != static_cast<std::size_t>(y.order()))
    throw std::invalid_argument("factor count does not match tensor order");
  for (int j = 1; j <= y.order(); ++j)
    y = mode_product(factors[static_cast<std::size_t>(j - 1)].u, j, y);
  return y;
}

BackSubstituteStats back_substitute(std::span<const Matrix> triangular, NDTensor& c, double singular_tol) {
  const int n_modes = c.order();
  if (triangular.size() != static_cast<std::size_t>(n_modes))
    throw std::invalid_argument("factor count does not match tensor order");
  for (int j = 0; j < n_modes; ++j)
    if (!triangular[static_cast<std::size_t>(j)].square() ||
        triangular[static_cast<std::size_t>(j)].rows() != c.dims[static_cast<std::size_t>(j)])
      throw std::invalid_argument("triangular factor does not match mode extent");

  const std::vector<std::int64_t> strides = cumulative_strides(c.dims);
  cxd* data = c.data.data();
  BackSubstituteStats stats;
  stats.min_abs_denominator = std::numeric_limits<double>::infinity();

  // Entries are resolved in decreasing flat order; every dependency of entry
  // i sits at a larger multi-index along exactly one mode, so a single pass
  // suffices.
  for (MultiIndexCursor cur = MultiIndexCursor::start(c.dims); !cur.exhausted; cur.next()) {
    const std::int64_t flat = cur.index - 1;
    cxd num = data[flat];
    cxd den{};
    for (int j = 0; j < n_modes; ++j) {
      const Matrix& t_mat = triangular[static_cast<std::size_t>(j)];
      const int ij = static_cast<int>(cur.current[static_cast<std::size_t>(j)]);
      const int nj = static_cast<int>(c.dims[static_cast<std::size_t>(j)]);
      den += t_mat(ij - 1, ij - 1);
      const std::int64_t stride = strides[static_cast<std::size_t>(j)];
      for (int k = ij + 1; k <= nj; ++k) num -= t_mat(ij - 1, k - 1) * data[flat + (k - ij) * stride];
      stats.multiplies += nj - ij;
    }
    const double aden = std::abs(den);
    stats.min_abs_denominator = std::min(stats.min_abs_denominator, aden);
    if (aden <= singular_tol) throw SingularOperatorError(cur.current, den);
    data[flat] = num / den;
    ++stats.entries;
  }
  return stats;
}

namespace {

struct DenominatorTensor {
  NDTensor sums;
  double min_abs = 0.0;
};

// Eigenvalue sums sum_j t_j(i_j, i_j) at every multi-index; throws when one
// falls at or below the tolerance.
DenominatorTensor eigenvalue_sums(std::span<const SchurFactors> factors, double singular_tol) {
  std::vector<std::int64_t> dims;
  std::vector<std::vector<cxd>> eigenvalues;
  for (const SchurFactors& f : factors) {
    std::vector<cxd> eig(static_cast<std::size_t>(f.order()));
    for (int i = 0; i < f.order(); ++i) eig[static_cast<std::size_t>(i)] = f.t(i, i);
    eigenvalues.push_back(std::move(eig));
    dims.push_back(f.order());
  }
  DenominatorTensor d;
  d.sums = NDTensor::zeros(dims);
  d.min_abs = std::numeric_limits<double>::infinity();
  for (MultiIndexCursor cur = MultiIndexCursor::start(dims); !cur.exhausted; cur.next()) {
    cxd den{};
    for (std::size_t j = 0; j < eigenvalues.size(); ++j)
      den += eigenvalues[j][static_cast<std::size_t>(cur.current[j] - 1)];
    const double aden = std::abs(den);
    d.min_abs = std::min(d.min_abs, aden);
    if (aden <= singular_tol) throw SingularOperatorError(cur.current, den);
    d.sums.data[static_cast<std::size_t>(cur.index - 1)] = den;
  }
  return d;
}

}  // namespace

DiagonalSpectra make_diagonal_spectra(std::span<const SchurFactors> factors, double singular_tol) {
  DiagonalSpectra spectra;
  for (const SchurFactors& f : factors) {
    std::vector<cxd> eig(static_cast<std::size_t>(f.order()));
    for (int i = 0; i < f.order(); ++i) eig[static_cast<std::size_t>(i)] = f.t(i, i);
    spectra.eigenvalues.push_back(std::move(eig));
  }
  DenominatorTensor d = eigenvalue_sums(factors, singular_tol);
  spectra.min_abs_denominator = d.min_abs;
  for (cxd& v : d.sums.data) v = 1.0 / v;
  spectra.lambda = std::move(d.sums);
  return spectra;
}

NDTensor solve_normal(const SylvesterProblem& problem, const DiagonalSpectra& spectra,
                      std::span<const SchurFactors> factors) {
  validate_problem(problem);
  if (spectra.lambda.dims != problem.rhs.dims) throw std::invalid_argument("spectra shape mismatch");
  NDTensor y = hadamard(spectra.lambda, forward_transform(factors, problem.rhs));
  return inverse_transform(factors, std::move(y));
}

SolveResult solve(const SylvesterProblem& problem, const SolveOptions& options) {
  validate_problem(problem);
  const auto t_start = Clock::now();
  SolveResult result;
  result.report.flop_estimate = flop_estimate(problem.rhs.dims);
  result.report.schur_flop_estimate = schur_flop_estimate(problem.rhs.dims);

  auto t0 = Clock::now();
  std::vector<SchurFactors> factors;
  factors.reserve(problem.coefficients.size());
  for (const Matrix& a : problem.coefficients) factors.push_back(schur(a));
  result.report.schur_seconds = seconds_since(t0);

  const double tol = options.singular_tol > 0.0 ? options.singular_tol : default_singular_tol(factors);

  bool diagonal_route = options.allow_fast_path;
  if (diagonal_route)
    for (const SchurFactors& f : factors)
      if (!numerically_diagonal(f.t)) {
        diagonal_route = false;
        break;
      }

  if (diagonal_route) {
    // Divide by the eigenvalue sums directly; storing reciprocals first would
    // add one more rounding per entry.
    const DenominatorTensor den = eigenvalue_sums(factors, tol);
    t0 = Clock::now();
    NDTensor c = forward_transform(factors, problem.rhs);
    result.report.transform_seconds = seconds_since(t0);
    t0 = Clock::now();
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] /= den.sums.data[i];
    result.report.backsub_seconds = seconds_since(t0);
    t0 = Clock::now();
    result.x = inverse_transform(factors, std::move(c));
    result.report.inverse_seconds = seconds_since(t0);
    result.report.used_normal_fast_path = true;
    result.report.min_abs_denominator = den.min_abs;
  } else {
    t0 = Clock::now();
    NDTensor c = forward_transform(factors, problem.rhs);
    result.report.transform_seconds = seconds_since(t0);
    t0 = Clock::now();
    std::vector<Matrix> triangular;
    triangular.reserve(factors.size());
    for (const SchurFactors& f : factors) triangular.push_back(f.t);
    const BackSubstituteStats stats = back_substitute(triangular, c, tol);
    result.report.backsub_seconds = seconds_since(t0);
    result.report.backsub_entries = stats.entries;
    result.report.backsub_multiplies = stats.multiplies;
    result.report.min_abs_denominator = stats.min_abs_denominator;
    t0 = Clock::now();
    result.x = inverse_transform(factors, std::move(c));
    result.report.inverse_seconds = seconds_since(t0);
  }

  if (options.real_output)
    for (cxd& v : result.x.data) v = cxd(v.real(), 0.0);
  result.report.total_seconds = seconds_since(t_start);
  return result;
}

std::int64_t flop_estimate(std::span<const std::int64_t> dims) {
  const std::int64_t total = checked_total(dims);
  std::int64_t sum = 0;
  for (std::int64_t n : dims)
    if (__builtin_add_overflow(sum, n, &sum)) throw std::overflow_error("flop estimate overflows int64");
  std::int64_t factor = 0;
  if (__builtin_mul_overflow(sum, static_cast<std::int64_t>(5), &factor) ||
      __builtin_add_overflow(factor, static_cast<std::int64_t>(1) - static_cast<std::int64_t>(dims.size()), &factor))
    throw std::overflow_error("flop estimate overflows int64");
  std::int64_t flops = 0;
  if (__builtin_mul_overflow(total, factor, &flops)) throw std::overflow_error("flop estimate overflows int64");
  return flops;
}

std::int64_t schur_flop_estimate(std::span<const std::int64_t> dims) {
  checked_total(dims);
  std::int64_t sum_cubes = 0;
  for (std::int64_t n : dims) {
    std::int64_t sq = 0;
    std::int64_t cube = 0;
    if (__builtin_mul_overflow(n, n, &sq) || __builtin_mul_overflow(sq, n, &cube) ||
        __builtin_add_overflow(sum_cubes, cube, &sum_cubes))
      throw std::overflow_error("flop estimate overflows int64");
  }
  std::int64_t flops = 0;
  if (__builtin_mul_overflow(sum_cubes, static_cast<std::int64_t>(25), &flops))
    throw std::overflow_error("flop estimate overflows int64");
  return flops;
}

}  // namespace ndsylv
