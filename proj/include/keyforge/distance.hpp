#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "keyforge/alphabet.hpp"

namespace keyforge {

/// Hyperparameters of the one-handed metric problem.
struct OptimizerConfig {
  double d_min = 0.01;  // key separation floor
  double c = 1.0;       // lower bound on the pair norm
  double alpha = 1.0;   // Ridge weight
  int max_iters = 50000;
  double step_size = 1e-2;
  double tolerance = 1e-8;  // L∞ iterate change

  /// Throws DataError on non-positive d_min, c, step or tolerance, or
  /// negative alpha.
  void validate() const;
};

/// Symmetric key-distance matrix with zero diagonal.
struct DistanceMatrix {
  Alphabet alphabet;
  Eigen::MatrixXd d;
  OptimizerConfig config;

  std::size_t size() const noexcept { return alphabet.size(); }
};

inline std::size_t pair_count(std::size_t n) noexcept { return n * (n - 1) / 2; }

/// Strict upper triangle in row-major order: (0,1), (0,2), ..., (n-2,n-1).
Eigen::VectorXd upper_triangle(const Eigen::MatrixXd& m);
Eigen::MatrixXd from_upper_triangle(const Eigen::VectorXd& v, std::size_t n);

/// Euclidean norm of the n(n-1)/2 upper-triangle entries (each pair once).
double pair_norm(const Eigen::MatrixXd& d);

}  // namespace keyforge
