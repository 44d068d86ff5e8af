#pragma once

#include <Eigen/Dense>

namespace keyforge {

struct TransportPlan {
  Eigen::MatrixXd plan;
  double cost = 0.0;
};

/// Exact discrete optimal transport between `supply` and `demand` (equal
/// totals) for a nonnegative cost matrix. Successive shortest paths on the
/// bipartite network, Dijkstra on reduced costs.
TransportPlan solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                              const Eigen::MatrixXd& cost);

struct LpResult {
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// min cᵀx s.t. A x = b, x ≥ 0 by a dense two-phase simplex with Bland's rule.
/// Intended for small problems. Throws DataError if infeasible or unbounded.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace keyforge
