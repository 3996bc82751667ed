#pragma once

#include <cstdint>
#include <vector>

#include "ndsylv/ode.hpp"

namespace ndsylv {

/// Collocation grid on the scaled Hermite nodes x_k / b together with the
/// first two differentiation matrices of the e^{-x^2/2}-weighted interpolant.
struct HermiteGrid {
  std::vector<double> nodes;  // ascending, symmetric about 0
  Matrix d1;
  Matrix d2;
  double scale = 1.0;  // the parameter b

  int size() const noexcept { return static_cast<int>(nodes.size()); }
};

/// Unscaled Hermite nodes: eigenvalues of the Jacobi matrix, polished by two
/// Newton steps on the degree-m Hermite function and symmetrized in pairs.
std::vector<double> hermite_roots(int m);

HermiteGrid hermite_grid(int m, double b);

/// Samples of prod_j exp(-x_{i_j}^2) over the m^n grid.
NDTensor gaussian_product(const HermiteGrid& grid, int n_modes);

/// Heat flow with drift: per-mode coefficient D2 + 2 diag(x) D1 plus the
/// reaction (2n+1)/n, forcing -exp(-x.x) and state samples of exp(-x.x).
/// max_bytes > 0 bounds the two tensors this allocates.
OdeSystem build_advdiff_system(const HermiteGrid& grid, int n_modes, std::uint64_t max_bytes = 0);

/// (1 + e^t) exp(-x.x) on the grid: the manufactured solution matching
/// build_advdiff_system with initial state doubled.
NDTensor advdiff_exact(const HermiteGrid& grid, int n_modes, double t);

}  // namespace ndsylv
