#include "ndsylv/ode.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace ndsylv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_system(const OdeSystem& s) {
  const int n_modes = s.forcing.order();
  if (n_modes < 2) throw std::invalid_argument("system order must be at least 2");
  if (static_cast<int>(s.coefficients.size()) != n_modes)
    throw std::invalid_argument("coefficient count does not match tensor order");
  for (int j = 0; j < n_modes; ++j) {
    const Matrix& a = s.coefficients[static_cast<std::size_t>(j)];
    if (!a.square() || a.rows() != s.forcing.dims[static_cast<std::size_t>(j)])
      throw std::invalid_argument("coefficient " + std::to_string(j + 1) + " does not match mode extent");
  }
  if (s.initial.dims != s.forcing.dims) throw std::invalid_argument("initial state shape mismatch");
}

}  // namespace

OdePropagator::OdePropagator(OdeSystem system, SolveOptions options)
    : system_(std::move(system)), options_(options) {
  validate_system(system_);
  const auto t0 = Clock::now();
  factors_.reserve(system_.coefficients.size());
  for (const Matrix& a : system_.coefficients) factors_.push_back(schur(a));
  schur_seconds_ = seconds_since(t0);
  for (const SchurFactors& f : factors_) triangular_.push_back(f.t);
  singular_tol_ = options_.singular_tol;
  if (singular_tol_ <= 0.0) {
    double s = 0.0;
    for (const Matrix& t_mat : triangular_) s += t_mat.norm_frobenius();
    singular_tol_ = std::numeric_limits<double>::epsilon() * s;
  }
  forcing_schur_ = forward_transform(factors_, system_.forcing);
  NDTensor y0 = forward_transform(factors_, system_.initial);
  operator_image_ = apply_operator(triangular_, y0);
  add_scaled(operator_image_, 1.0, forcing_schur_);
}

SolveResult OdePropagator::at(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  SolveResult result;
  result.report.schur_seconds = schur_seconds_;
  result.report.flop_estimate = flop_estimate(system_.forcing.dims);
  result.report.schur_flop_estimate = schur_flop_estimate(system_.forcing.dims);
  const auto t_start = Clock::now();

  // G(t) = exp(t T_N) ... exp(t T_1) (sum_j T_j Y0 + C) - C, all along their
  // modes, then one back-substitution and the inverse transform recover X(t).
  auto t0 = Clock::now();
  NDTensor g = operator_image_;
  for (int j = 1; j <= g.order(); ++j)
    g = mode_product(triangular_exp(triangular_[static_cast<std::size_t>(j - 1)], t), j, g);
  add_scaled(g, -1.0, forcing_schur_);
  result.report.transform_seconds = seconds_since(t0);

  t0 = Clock::now();
  const BackSubstituteStats stats = back_substitute(triangular_, g, singular_tol_);
  result.report.backsub_seconds = seconds_since(t0);
  result.report.backsub_entries = stats.entries;
  result.report.backsub_multiplies = stats.multiplies;
  result.report.min_abs_denominator = stats.min_abs_denominator;

  t0 = Clock::now();
  result.x = inverse_transform(factors_, std::move(g));
  result.report.inverse_seconds = seconds_since(t0);
  if (options_.real_output)
    for (cxd& v : result.x.data) v = cxd(v.real(), 0.0);
  result.report.total_seconds = seconds_since(t_start) + schur_seconds_;
  return result;
}

SolveResult propagate(const OdeSystem& system, double t, const SolveOptions& options) {
  return OdePropagator(system, options).at(t);
}

NDTensor rk4_reference(const OdeSystem& system, double t, double dt, std::int64_t max_steps) {
  validate_system(system);
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("step size must be positive and finite");
  NDTensor x = system.initial;
  if (t == 0.0) return x;
  const double direction = t > 0.0 ? 1.0 : -1.0;
  const double span = std::abs(t);
  const auto full_steps = static_cast<std::int64_t>(std::floor(span / dt));
  if (full_steps + 1 > max_steps) throw std::invalid_argument("step budget exceeded");

  const auto rhs = [&system](const NDTensor& state) {
    NDTensor r = apply_operator(system.coefficients, state);
    add_scaled(r, 1.0, system.forcing);
    return r;
  };

  const auto advance = [&](double h) {
    const cxd ch(h, 0.0);
    const NDTensor k1 = rhs(x);
    NDTensor stage = x;
    add_scaled(stage, 0.5 * ch, k1);
    const NDTensor k2 = rhs(stage);
    stage = x;
    add_scaled(stage, 0.5 * ch, k2);
    const NDTensor k3 = rhs(stage);
    stage = x;
    add_scaled(stage, ch, k3);
    const NDTensor k4 = rhs(stage);
    add_scaled(x, ch / 6.0, k1);
    add_scaled(x, ch / 3.0, k2);
    add_scaled(x, ch / 3.0, k3);
    add_scaled(x, ch / 6.0, k4);
    if (!x.all_finite()) throw NonFiniteStateError("integration state is no longer finite");
  };

  for (std::int64_t i = 0; i < full_steps; ++i) advance(direction * dt);
  const double remainder = span - static_cast<double>(full_steps) * dt;
  if (remainder > 0.0) advance(direction * remainder);
  return x;
}

}  // namespace ndsylv
