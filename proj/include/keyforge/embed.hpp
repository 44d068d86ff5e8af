#pragma once

#include <Eigen/Dense>

#include "keyforge/alphabet.hpp"
#include "keyforge/distance.hpp"
#include "keyforge/geometry.hpp"

namespace keyforge {

struct Embedding2D {
  Alphabet alphabet;
  Points points;
  double stress = 0.0;  // ‖D_out - D_in‖_F / ‖D_in‖_F
};

/// Classical MDS: double centering, top two eigenpairs, negative eigenvalues
/// clamped to zero. Each eigenvector is flipped so its largest-magnitude
/// component is positive.
Embedding2D mds_embed(const Alphabet& alphabet, const Eigen::MatrixXd& d);
inline Embedding2D mds_embed(const DistanceMatrix& d) { return mds_embed(d.alphabet, d.d); }

double embedding_stress(const Eigen::MatrixXd& d, const Points& points);

/// Centers, scales to unit RMS radius, and rotates so the covariance is
/// diagonal with the larger variance on the x axis.
Embedding2D align_to_grid(const Embedding2D& emb);

}  // namespace keyforge
