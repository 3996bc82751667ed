#include "ndsylv/hermite.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ndsylv/schur.hpp"

namespace ndsylv {

namespace {

// Degree-m normalized Hermite function and its derivative.
std::array<double, 2> hermite_psi(int m, double x) {
  const double p_start = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (m == 0) return {p_start, -x * p_start};
  double p0 = p_start;
  double p1 = std::sqrt(2.0) * x * p0;
  for (int k = 1; k < m; ++k) {
    const double p2 = x * std::sqrt(2.0 / (k + 1)) * p1 - std::sqrt(static_cast<double>(k) / (k + 1)) * p0;
    p0 = p1;
    p1 = p2;
  }
  return {p1, std::sqrt(2.0 * m) * p0 - x * p1};
}

// Differentiation matrices of the weighted Lagrange interpolant
// sum_j f_j (alpha(x)/alpha(x_j)) l_j(x) on arbitrary distinct nodes.
// b_ratios[l-1][j] holds alpha^(l)(x_j) / alpha(x_j).
std::vector<Matrix> poldif(const std::vector<double>& x, const std::vector<double>& alpha,
                           const std::vector<std::vector<double>>& b_ratios) {
  const int n = static_cast<int>(x.size());
  const int n_derivs = static_cast<int>(b_ratios.size());

  std::vector<double> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double p = alpha[static_cast<std::size_t>(k)];
    for (int j = 0; j < n; ++j)
      if (j != k) p *= x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(j)];
    c[static_cast<std::size_t>(k)] = p;
  }

  const auto z = [&x](int k, int j) { return 1.0 / (x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(j)]); };

  // xmat column j lists 1/(x_j - x_k) over k != j in ascending k order.
  std::vector<std::vector<double>> xmat(static_cast<std::size_t>(n > 0 ? n - 1 : 0),
                                        std::vector<double>(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) {
    int r = 0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      xmat[static_cast<std::size_t>(r++)][static_cast<std::size_t>(j)] = z(j, k);
    }
  }

  std::vector<std::vector<double>> y(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 1.0));
  Matrix d = Matrix::identity(n);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(n_derivs));

  for (int ell = 1; ell <= n_derivs; ++ell) {
    // Cumulative sums give the diagonal entries; the off-diagonals follow the
    // usual two-term recurrence on the previous derivative matrix.
    std::vector<std::vector<double>> y_next(static_cast<std::size_t>(n),
                                            std::vector<double>(static_cast<std::size_t>(n)));
    y_next[0] = b_ratios[static_cast<std::size_t>(ell - 1)];
    for (int r = 1; r < n; ++r)
      for (int j = 0; j < n; ++j)
        y_next[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            y_next[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j)] +
            ell * y[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j)] *
                xmat[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j)];
    y = std::move(y_next);

    std::vector<double> prev_diag(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) prev_diag[static_cast<std::size_t>(k)] = d(k, k).real();
    Matrix d_next(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const double ratio = c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(j)];
        d_next(k, j) = ell * z(k, j) * (ratio * prev_diag[static_cast<std::size_t>(k)] - d(k, j).real());
      }
    for (int j = 0; j < n; ++j) d_next(j, j) = y[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(j)];
    d = std::move(d_next);
    out.push_back(d);
  }
  return out;
}

}  // namespace

std::vector<double> hermite_roots(int m) {
  if (m < 1) throw std::invalid_argument("node count must be at least 1");
  if (m == 1) return {0.0};

  Matrix jacobi(m, m);
  for (int k = 1; k < m; ++k) {
    const double off = std::sqrt(0.5 * k);
    jacobi(k - 1, k) = off;
    jacobi(k, k - 1) = off;
  }
  const SchurFactors f = schur(jacobi);
  std::vector<double> x(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) x[static_cast<std::size_t>(i)] = f.t(i, i).real();
  std::sort(x.begin(), x.end());

  for (double& root : x)
    for (int step = 0; step < 2; ++step) {
      const auto [value, slope] = hermite_psi(m, root);
      if (slope == 0.0) break;
      root -= value / slope;
    }

  for (int i = 0; i < m / 2; ++i) {
    const double v = 0.5 * (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(m - 1 - i)]);
    x[static_cast<std::size_t>(i)] = v;
    x[static_cast<std::size_t>(m - 1 - i)] = -v;
  }
  if (m % 2 == 1) x[static_cast<std::size_t>(m / 2)] = 0.0;
  return x;
}

HermiteGrid hermite_grid(int m, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw std::invalid_argument("scale must be positive and finite");
  std::vector<double> x = hermite_roots(m);

  std::vector<double> alpha(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) alpha[static_cast<std::size_t>(j)] = std::exp(-0.5 * x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)]);

  // Ratios alpha^(l)/alpha of the weight, from the Hermite-style recurrence
  // r_l = -x r_{l-1} - (l-1) r_{l-2}.
  std::vector<std::vector<double>> ratios(3, std::vector<double>(static_cast<std::size_t>(m)));
  for (int j = 0; j < m; ++j) {
    ratios[0][static_cast<std::size_t>(j)] = 1.0;
    ratios[1][static_cast<std::size_t>(j)] = -x[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < m; ++j)
    ratios[2][static_cast<std::size_t>(j)] =
        -x[static_cast<std::size_t>(j)] * ratios[1][static_cast<std::size_t>(j)] - ratios[0][static_cast<std::size_t>(j)];

  std::vector<Matrix> dm = poldif(x, alpha, {ratios[1], ratios[2]});

  HermiteGrid grid;
  grid.scale = b;
  grid.nodes.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) grid.nodes[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] / b;
  grid.d1 = cxd(b, 0.0) * dm[0];
  grid.d2 = cxd(b * b, 0.0) * dm[1];
  return grid;
}

NDTensor gaussian_product(const HermiteGrid& grid, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("mode count must be at least 1");
  const int m = grid.size();
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    g[static_cast<std::size_t>(j)] = std::exp(-grid.nodes[static_cast<std::size_t>(j)] * grid.nodes[static_cast<std::size_t>(j)]);
  NDTensor t = NDTensor::zeros(std::vector<std::int64_t>(static_cast<std::size_t>(n_modes), m));
  std::fill(t.data.begin(), t.data.end(), cxd(1.0, 0.0));
  for (int mode = 1; mode <= n_modes; ++mode) scale_along_mode(t, g, mode);
  return t;
}

OdeSystem build_advdiff_system(const HermiteGrid& grid, int n_modes, std::uint64_t max_bytes) {
  if (n_modes < 2) throw std::invalid_argument("mode count must be at least 2");
  const int m = grid.size();
  const std::int64_t total = checked_total(std::vector<std::int64_t>(static_cast<std::size_t>(n_modes), m));
  if (max_bytes > 0) {
    const std::uint64_t needed = 2u * static_cast<std::uint64_t>(total) * sizeof(cxd);
    if (needed > max_bytes)
      throw MemoryBudgetError("advection-diffusion state needs " + std::to_string(needed) + " bytes, budget is " +
                              std::to_string(max_bytes));
  }

  const double reaction = (2.0 * n_modes + 1.0) / n_modes;
  Matrix a(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      a(i, j) = grid.d2(i, j) + 2.0 * grid.nodes[static_cast<std::size_t>(i)] * grid.d1(i, j);
      if (i == j) a(i, j) += reaction;
    }

  OdeSystem sys;
  sys.coefficients.assign(static_cast<std::size_t>(n_modes), a);
  sys.initial = gaussian_product(grid, n_modes);
  sys.forcing = sys.initial;
  for (cxd& v : sys.forcing.data) v = -v;
  return sys;
}

NDTensor advdiff_exact(const HermiteGrid& grid, int n_modes, double t) {
  NDTensor g = gaussian_product(grid, n_modes);
  const double amplitude = 1.0 + std::exp(t);
  for (cxd& v : g.data) v *= amplitude;
  return g;
}

}  // namespace ndsylv
