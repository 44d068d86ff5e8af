#pragma once

#include <span>

#include <Eigen/Dense>

#include "keyforge/alphabet.hpp"
#include "keyforge/corpus.hpp"
#include "keyforge/distance.hpp"
#include "keyforge/partition.hpp"

namespace keyforge {

/// Letter Markov chain: row-stochastic P and its stationary distribution.
struct TransitionModel {
  Alphabet alphabet;
  Eigen::MatrixXd P;
  Eigen::VectorXd pi;

  std::size_t size() const noexcept { return alphabet.size(); }
};

enum class ChainMode {
  Strict,   // more than one closed class is an error
  Lenient,  // return the damped-iteration limit from the uniform start
};

struct StationaryOptions {
  ChainMode mode = ChainMode::Strict;
  double tolerance = 1e-12;  // L1 change between iterates
  int plain_iters = 10000;
  int damped_iters = 2000000;
  double damping = 0.999;  // lazy chain damping·P + (1-damping)·I
};

/// Number of closed communicating classes of the chain with transition
/// graph {i→j : P(i,j) > 0}.
int closed_class_count(const Eigen::MatrixXd& P);

/// Power iteration from the uniform start; if it does not settle within
/// plain_iters steps the lazy chain is iterated instead (same fixed point,
/// aperiodic). Throws ConvergenceError on failure.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P,
                                        const StationaryOptions& opts = {});

/// Rows normalized; empty rows become uniform.
TransitionModel build_model(const BigramCounts& counts, const StationaryOptions& opts = {});

/// Wraps an existing row-stochastic matrix (validated) and computes π.
TransitionModel make_model(const Alphabet& alphabet, const Eigen::MatrixXd& P,
                           const StationaryOptions& opts = {});

/// Throws DataError unless the model satisfies the TransitionModel invariants
/// (stochastic rows, π a distribution, πP = π).
void validate_model(const TransitionModel& model, double tol = 1e-8);

/// L1 gap between the chain's π and externally measured letter frequencies.
double stationary_gap(const TransitionModel& model, const Eigen::VectorXd& frequencies);

/// Q(i, j) = Σ_k P_iT P_T^k P_Tj = P_iT (I - P_T)^{-1} P_Tj, the probability of
/// going from i to j with every intermediate letter in `through`. Entries
/// are meaningful for i, j outside `through`.
Eigen::MatrixXd absorption_matrix(const Eigen::MatrixXd& P, std::span<const int> through);

double absorption_transition(const TransitionModel& model, std::span<const int> through,
                             int i, int j);

/// The chain observed only on `keep`: P_KK + P_KT (I - P_T)^{-1} P_TK, with the
/// stationary distribution recomputed. This is the sequence of keys one hand
/// presses when `keep` is its cluster.
TransitionModel censored_model(const TransitionModel& model, std::span<const int> keep);

/// Two-handed objective for fixed clusters and per-cluster distances (dA and
/// dB are indexed by the ascending letter order of each cluster):
///   Σ_{i,j∈A} π_i (P_ij + P_iB(I-P_B)^{-1}P_Bj) dA_ij + (A ↔ B).
double h2_objective(const TransitionModel& model, const Partition& partition,
                    const Eigen::MatrixXd& dA, const Eigen::MatrixXd& dB);

}  // namespace keyforge
