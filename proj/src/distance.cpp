#include "keyforge/distance.hpp"

#include <cmath>

#include "keyforge/error.hpp"
#include "keyforge/geometry.hpp"

namespace keyforge {

void OptimizerConfig::validate() const {
  if (!(d_min > 0.0)) throw DataError("d_min must be positive");
  if (!(c > 0.0)) throw DataError("c must be positive");
  if (!(alpha >= 0.0)) throw DataError("alpha must be nonnegative");
  if (!(step_size > 0.0)) throw DataError("step size must be positive");
  if (!(tolerance > 0.0)) throw DataError("tolerance must be positive");
  if (max_iters < 1) throw DataError("max_iters must be at least 1");
}

Eigen::VectorXd upper_triangle(const Eigen::MatrixXd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Eigen::VectorXd v(static_cast<Eigen::Index>(pair_count(n)));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) v(k++) = m(i, j);
  return v;
}

Eigen::MatrixXd from_upper_triangle(const Eigen::VectorXd& v, std::size_t n) {
  if (static_cast<std::size_t>(v.size()) != pair_count(n)) throw DataError("pair vector length mismatch");
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < N; ++i)
    for (Eigen::Index j = i + 1; j < N; ++j) {
      m(i, j) = v(k);
      m(j, i) = v(k);
      ++k;
    }
  return m;
}

double pair_norm(const Eigen::MatrixXd& d) {
  const Eigen::VectorXd v = upper_triangle(d);
  return std::sqrt(ordered_sum(v.cwiseAbs2()));
}

}  // namespace keyforge
