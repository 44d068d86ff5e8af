#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "keyforge/distance.hpp"
#include "keyforge/error.hpp"
#include "keyforge/markov.hpp"

namespace keyforge {

/// w_ij = π_i P_ij + π_j P_ji over the upper triangle, so that
/// L(d) = Σ_{i≠j} π_i P_ij d_ij = w · upper_triangle(d) for symmetric d.
Eigen::VectorXd pair_weights(const TransitionModel& model);

/// L(d) = Σ_{i≠j} π_i P_ij d_ij.
double long_run_cost(const TransitionModel& model, const Eigen::MatrixXd& d);
inline double long_run_cost(const TransitionModel& model, const DistanceMatrix& d) {
  return long_run_cost(model, d.d);
}

/// w·x + α‖x‖² and its gradient, on the upper-triangle parameterization.
double h1_objective(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double alpha);
Eigen::VectorXd h1_gradient(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double alpha);

/// Clamp to d_min, then if ‖x‖ < c scale the excess above d_min so that the
/// norm reaches c. The norm bound describes the outside of a ball, so this is
/// a retraction rather than a Euclidean projection.
Eigen::VectorXd retract_feasible(const Eigen::VectorXd& x, const OptimizerConfig& cfg);

/// Everything at d_min except the least-travelled pair, which takes up the
/// rest of the norm budget: d² + (n(n-1)/2 - 1) d_min² = c².
DistanceMatrix greedy_unregularized(const TransitionModel& model, const OptimizerConfig& cfg);

struct H1Solution {
  DistanceMatrix distances;
  double objective = 0.0;
  double residual = 0.0;  // L∞ change of the last accepted step
  int iterations = 0;
  std::vector<double> trace;  // objective after every accepted step
};

/// Raised when the solver exhausts max_iters; carries the last iterate.
class H1ConvergenceError : public ConvergenceError {
 public:
  H1ConvergenceError(Eigen::MatrixXd last, double residual)
      : ConvergenceError("optimize_h1 did not converge", residual), last_(std::move(last)) {}
  const Eigen::MatrixXd& last_iterate() const noexcept { return last_; }

 private:
  Eigen::MatrixXd last_;
};

/// Projected gradient descent on L(d) + α‖d‖² subject to symmetry, the
/// d_min floor and ‖d‖ ≥ c. Starts from the uniform feasible matrix unless a
/// start is given (the start is retracted first).
H1Solution optimize_h1(const TransitionModel& model, const OptimizerConfig& cfg,
                       const std::optional<Eigen::MatrixXd>& start = std::nullopt);

}  // namespace keyforge
