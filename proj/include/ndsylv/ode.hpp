#pragma once

#include "ndsylv/sylvester.hpp"

namespace ndsylv {

/// dX/dt = sum_j A_j applied along mode j of X + B, X(0) = initial.
struct OdeSystem {
  std::vector<Matrix> coefficients;
  NDTensor forcing;
  NDTensor initial;
};

/// Evaluates the closed-form solution at arbitrary times. The Schur factors
/// and the transformed initial data are computed once at construction; each
/// at() costs one set of triangular exponentials, 2N mode products and one
/// back-substitution.
class OdePropagator {
 public:
  explicit OdePropagator(OdeSystem system, SolveOptions options = {});

  SolveResult at(double t) const;

  const OdeSystem& system() const noexcept { return system_; }

 private:
  OdeSystem system_;
  SolveOptions options_;
  std::vector<SchurFactors> factors_;
  std::vector<Matrix> triangular_;
  NDTensor forcing_schur_;   // C
  NDTensor operator_image_;  // sum_j T_j applied along mode j of Y0, plus C
  double singular_tol_ = 0.0;
  double schur_seconds_ = 0.0;
};

/// One-call form of OdePropagator::at.
SolveResult propagate(const OdeSystem& system, double t, const SolveOptions& options = {});

/// Classical fixed-step RK4 on the same right-hand side; the last step is
/// shortened to land exactly on t. Throws NonFiniteStateError if the state
/// leaves finite range and std::invalid_argument when more than `max_steps`
/// steps would be needed.
NDTensor rk4_reference(const OdeSystem& system, double t, double dt, std::int64_t max_steps = 50'000'000);

}  // namespace ndsylv
