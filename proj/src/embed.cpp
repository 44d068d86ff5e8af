#include "keyforge/embed.hpp"

#include <cmath>

#include "keyforge/error.hpp"

namespace keyforge {

double embedding_stress(const Eigen::MatrixXd& d, const Points& points) {
  const Eigen::MatrixXd out = pairwise_distances(points);
  const double denom = d.norm();
  return denom > 0.0 ? (out - d).norm() / denom : 0.0;
}

Embedding2D mds_embed(const Alphabet& alphabet, const Eigen::MatrixXd& d) {
  const Eigen::Index n = d.rows();
  if (n < 3) throw DataError("MDS needs at least three points");
  if (d.cols() != n || static_cast<std::size_t>(n) != alphabet.size())
    throw DataError("distance matrix does not match the alphabet");
  if (!d.allFinite()) throw DataError("distance matrix has non-finite entries");

  const Eigen::MatrixXd G = double_center(d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(G);
  if (eig.info() != Eigen::Success) throw DataError("eigendecomposition failed");

  const Eigen::VectorXd& values = eig.eigenvalues();  // ascending
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (values(n - 1) <= 1e-14 * scale && values(n - 2) <= 1e-14 * scale)
    throw DataError("degenerate metric");

  Embedding2D emb{alphabet, Points(n, 2), 0.0};
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1 - k);
    apply_sign_convention(v);
    emb.points.col(k) = v * std::sqrt(std::max(values(n - 1 - k), 0.0));
  }
  emb.points.rowwise() -= emb.points.colwise().mean();
  emb.stress = embedding_stress(d, emb.points);
  return emb;
}

Embedding2D align_to_grid(const Embedding2D& emb) {
  Points p = emb.points;
  if (p.rows() < 2) throw DataError("alignment needs at least two points");
  p.rowwise() -= p.colwise().mean();
  const double rms = std::sqrt(p.rowwise().squaredNorm().mean());
  if (!(rms > 1e-300)) throw DataError("zero variance point cloud");
  p /= rms;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(Eigen::Matrix2d(covariance(p)));
  Eigen::Vector2d major = eig.eigenvectors().col(1);
  apply_sign_convention(major);
  const Eigen::Vector2d minor(-major.y(), major.x());
  Eigen::Matrix2d rot;
  rot.col(0) = major;
  rot.col(1) = minor;

  Embedding2D out = emb;
  out.points = p * rot;
  return out;
}

}  // namespace keyforge
