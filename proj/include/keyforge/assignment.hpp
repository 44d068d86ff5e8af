#pragma once

#include <vector>

#include <Eigen/Dense>

namespace keyforge {

struct Assignment {
  std::vector<int> cols;  // cols[row]
  double cost = 0.0;      // Σ cost(row, cols[row]) summed in row order
};

/// Minimum-cost injective row → column assignment for rows ≤ cols. The matrix
/// is padded with zero-cost dummy rows and solved with the shortest
/// augmenting path Hungarian method. Among optima (relative tolerance 1e-12),
/// the lexicographically smallest column vector is returned.
Assignment solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace keyforge
