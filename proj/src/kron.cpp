#include "ndsylv/kron.hpp"

namespace ndsylv {

Matrix kron_product(const Matrix& c, const Matrix& d, int max_order) {
  const std::int64_t rows = static_cast<std::int64_t>(c.rows()) * d.rows();
  const std::int64_t cols = static_cast<std::int64_t>(c.cols()) * d.cols();
  if (rows > max_order || cols > max_order)
    throw std::length_error("Kronecker product exceeds the size cap of " + std::to_string(max_order));
  Matrix r(static_cast<int>(rows), static_cast<int>(cols));
  for (int jc = 0; jc < c.cols(); ++jc)
    for (int ic = 0; ic < c.rows(); ++ic) {
      const cxd f = c(ic, jc);
      if (f == cxd{}) continue;
      for (int jd = 0; jd < d.cols(); ++jd)
        for (int id = 0; id < d.rows(); ++id)
          r(ic * d.rows() + id, jc * d.cols() + jd) = f * d(id, jd);
    }
  return r;
}

Matrix kron_sum(std::span<const Matrix> coefficients, int max_order) {
  if (coefficients.empty()) throw std::invalid_argument("kron_sum needs at least one matrix");
  for (const Matrix& a : coefficients)
    if (!a.square()) throw std::invalid_argument("kron_sum needs square matrices");
  Matrix s = coefficients[0];
  if (s.rows() > max_order) throw std::length_error("Kronecker sum exceeds the size cap");
  for (std::size_t j = 1; j < coefficients.size(); ++j) {
    const Matrix& a = coefficients[j];
    const Matrix left = kron_product(a, Matrix::identity(s.rows()), max_order);
    const Matrix right = kron_product(Matrix::identity(a.rows()), s, max_order);
    s = left + right;
  }
  return s;
}

std::vector<cxd> dense_solve(const Matrix& a, std::vector<cxd> b) {
  return PartialPivLU(a).solve(std::move(b));
}

NDTensor oracle_solve(const SylvesterProblem& problem, int max_order) {
  const std::int64_t total = checked_total(problem.rhs.dims);
  if (total > max_order)
    throw std::length_error("oracle limited to systems of order " + std::to_string(max_order));
  const Matrix big = kron_sum(problem.coefficients, max_order);
  std::vector<cxd> x = dense_solve(big, vec(problem.rhs));
  return NDTensor::make(problem.rhs.dims, std::move(x));
}

}  // namespace ndsylv
