#pragma once

// Small dense helpers shared by the embedding, layout and bench modules.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace keyforge {

template <typename Scalar>
using PointSet = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

using Points = PointSet<double>;

/// Sum of the coefficients in ascending order. The result does not depend on
/// the order of the input, which keeps solvers exactly equivariant under
/// relabeling.
template <typename Derived>
typename Derived::Scalar ordered_sum(const Eigen::DenseBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  std::vector<Scalar> v(values.size());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < values.cols(); ++j)
    for (Eigen::Index i = 0; i < values.rows(); ++i) v[k++] = values(i, j);
  std::sort(v.begin(), v.end());
  Scalar s(0);
  for (const auto& x : v) s += x;
  return s;
}

/// Euclidean distance matrix of a planar (or any-dimensional) point set.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
pairwise_distances(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = pts.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i, i) = Scalar(0);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = (pts.row(i) - pts.row(j)).norm();
      d(j, i) = d(i, j);
    }
  }
  return d;
}

/// G = -1/2 J (D∘D) J with J = I - 11ᵀ/n.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
double_center(const Eigen::MatrixBase<Derived>& dist) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat sq = dist.cwiseProduct(dist);
  const auto row_mean = sq.rowwise().mean().eval();
  const auto col_mean = sq.colwise().mean().eval();
  const Scalar mean = sq.mean();
  Mat g = sq;
  g.colwise() -= row_mean;
  g.rowwise() -= col_mean;
  g.array() += mean;
  g *= Scalar(-0.5);
  return Mat((g + g.transpose()) * Scalar(0.5));
}

template <typename Derived, typename WDerived>
Eigen::Matrix<typename Derived::Scalar, 1, Eigen::Dynamic> weighted_centroid(
    const Eigen::MatrixBase<Derived>& pts,
    const Eigen::MatrixBase<WDerived>& w) {
  return (w.transpose() * pts) / w.sum();
}

/// Σ w_i (x_i - μ)(x_i - μ)ᵀ / Σ w_i.
template <typename Derived, typename WDerived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
weighted_covariance(const Eigen::MatrixBase<Derived>& pts,
                    const Eigen::MatrixBase<WDerived>& w) {
  const auto mu = weighted_centroid(pts, w).eval();
  const auto centered = (pts.rowwise() - mu).eval();
  return centered.transpose() * w.asDiagonal() * centered / w.sum();
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
covariance(const Eigen::MatrixBase<Derived>& pts) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Ones(pts.rows());
  return weighted_covariance(pts, w);
}

/// Flip v so its largest-magnitude entry is positive (lowest index on ties).
template <typename Derived>
void apply_sign_convention(Eigen::MatrixBase<Derived>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best))) best = i;
  if (v(best) < 0) v = -v;
}

}  // namespace keyforge
