#include "ndsylv/rng.hpp"

namespace ndsylv {

Matrix random_matrix(int n, Xoshiro256pp& rng) {
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = rng.uniform_complex();
  return m;
}

NDTensor random_tensor(const std::vector<std::int64_t>& dims, Xoshiro256pp& rng) {
  NDTensor t = NDTensor::zeros(dims);
  for (cxd& v : t.data) v = rng.uniform_complex();
  return t;
}

GeneratedProblem random_problem(const std::vector<std::int64_t>& dims, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  GeneratedProblem g;
  for (std::int64_t n : dims) g.problem.coefficients.push_back(random_matrix(static_cast<int>(n), rng));
  g.x_true = random_tensor(dims, rng);
  g.problem.rhs = apply_operator(g.problem.coefficients, g.x_true);
  return g;
}

OdeSystem random_ode_system(const std::vector<std::int64_t>& dims, std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  OdeSystem sys;
  for (std::int64_t n : dims) sys.coefficients.push_back(random_matrix(static_cast<int>(n), rng));
  sys.forcing = random_tensor(dims, rng);
  sys.initial = random_tensor(dims, rng);
  return sys;
}

}  // namespace ndsylv
