#pragma once

#include <vector>

#include <Eigen/Dense>

#include "keyforge/distance.hpp"
#include "keyforge/markov.hpp"

namespace keyforge {

struct DiscreteMeasure {
  std::vector<int> support;  // letter indices, nearest first
  Eigen::VectorXd weights;
  bool fallback = false;  // transition mass on the support was zero; uniform used
};

/// μ_x: P(x, ·) restricted to the k letters nearest to x (x included, ties by
/// letter order) and renormalized.
DiscreteMeasure knn_measure(const TransitionModel& model, const Eigen::MatrixXd& d, int x, int k);

/// Exact W₁ under the ground metric d.
double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Eigen::MatrixXd& d);

/// κ_xy = 1 - W₁(μ_x, μ_y) / d(x, y).
double ricci_edge(const TransitionModel& model, const Eigen::MatrixXd& d, int x, int y, int k);

struct LetterCurvature {
  int k = 0;
  int letter = 0;
  std::vector<int> neighbors;  // the k-1 nearest non-self letters
  std::vector<double> kappas;  // κ along x → neighbor
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double gauss = 0.0;  // κ_max · κ_min
  bool fallback = false;
};

struct CurvatureReport {
  Alphabet alphabet;
  int k_min = 2;
  int k_max = 7;
  std::vector<LetterCurvature> entries;  // ordered by (k, letter)
  Eigen::VectorXd mean_gauss;           // per letter, mean over k

  const LetterCurvature& at(int k, int letter) const;
};

CurvatureReport gauss_curvatures(const TransitionModel& model, const Eigen::MatrixXd& d,
                                 int k_min = 2, int k_max = 7, unsigned threads = 1);

}  // namespace keyforge
