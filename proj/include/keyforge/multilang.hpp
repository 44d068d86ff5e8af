#pragma once

#include <vector>

#include <Eigen/Dense>

#include "keyforge/markov.hpp"

namespace keyforge {

struct LanguageEnsemble {
  std::vector<TransitionModel> models;
  Eigen::VectorXd weights;  // empty means uniform
};

struct BarycenterOptions {
  double eps_start = 1e-1;
  double eps_end = 1e-3;
  double eps_factor = 0.1;
  int max_inner = 10000;
  double tolerance = 1e-6;    // L1 change of the barycenter between sweeps
  int exact_max_support = 6;  // solve the exact LP at or below this size
};

/// Σ_k w_k W₂²(row_k, p) under the squared ground metric, solved exactly.
double barycenter_objective(const std::vector<Eigen::VectorXd>& rows,
                            const Eigen::VectorXd& weights, const Eigen::MatrixXd& ground,
                            const Eigen::VectorXd& p);

/// Fixed-support W₂² barycenter. Log-domain iterative Bregman projections
/// with a decreasing ε schedule; replaced by the exact LP optimum for small
/// supports.
Eigen::VectorXd row_barycenter(const std::vector<Eigen::VectorXd>& rows,
                               const Eigen::VectorXd& weights, const Eigen::MatrixXd& ground,
                               const BarycenterOptions& opts = {});

/// Row-wise barycenter of the ensemble's transition matrices, then π.
TransitionModel barycenter_model(const LanguageEnsemble& ensemble, const Eigen::MatrixXd& ground,
                                 const BarycenterOptions& opts = {});

}  // namespace keyforge
