#include "keyforge/markov.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "keyforge/error.hpp"

namespace keyforge {
namespace {

void require_stochastic(const Eigen::MatrixXd& P) {
  if (P.rows() != P.cols() || P.rows() < 2) throw DataError("transition matrix must be square, n >= 2");
  if (!P.allFinite() || (P.array() < 0.0).any()) throw DataError("transition matrix has negative or non-finite entries");
  for (Eigen::Index i = 0; i < P.rows(); ++i)
    if (std::abs(P.row(i).sum() - 1.0) > 1e-9) throw DataError("transition matrix row " + std::to_string(i) + " does not sum to 1");
}

std::vector<int> sorted_unique(std::span<const int> idx, Eigen::Index n) {
  std::vector<int> out(idx.begin(), idx.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int i : out)
    if (i < 0 || i >= n) throw DataError("letter index out of range");
  return out;
}

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                       const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = m(rows[r], cols[c]);
  return out;
}

std::vector<int> complement(const std::vector<int>& set, Eigen::Index n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(set.begin(), set.end(), i)) out.push_back(i);
  return out;
}

double l1_residual(const Eigen::RowVectorXd& pi, const Eigen::MatrixXd& P) {
  return (pi * P - pi).lpNorm<1>();
}

}  // namespace

int closed_class_count(const Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (Eigen::Index i = 0; i < n; ++i) {
    reach[i][i] = 1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (P(i, j) > 0.0) reach[i][j] = 1;
  }
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      if (reach[i][k])
        for (Eigen::Index j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;

  // A class is closed iff every letter it reaches reaches back.
  int closed = 0;
  std::vector<char> seen(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (seen[i]) continue;
    bool is_closed = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) seen[j] = 1;
      if (reach[i][j] && !reach[j][i]) is_closed = false;
    }
    if (is_closed) ++closed;
  }
  return closed;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& P, const StationaryOptions& opts) {
  require_stochastic(P);
  const Eigen::Index n = P.rows();
  if (opts.mode == ChainMode::Strict) {
    const int closed = closed_class_count(P);
    if (closed > 1)
      throw DataError("reducible chain: " + std::to_string(closed) +
                      " closed classes, stationary distribution is not unique");
  }

  const Eigen::RowVectorXd uniform = Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  Eigen::RowVectorXd pi = uniform;
  bool converged = false;
  for (int it = 0; it < opts.plain_iters; ++it) {
    Eigen::RowVectorXd next = pi * P;
    const double change = (next - pi).lpNorm<1>();
    pi = next / next.sum();
    if (change < opts.tolerance) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    // Lazy chain: same stationary vectors, no periodicity.
    const Eigen::MatrixXd lazy =
        opts.damping * P + (1.0 - opts.damping) * Eigen::MatrixXd::Identity(n, n);
    pi = uniform;
    for (int it = 0; it < opts.damped_iters; ++it) {
      Eigen::RowVectorXd next = pi * lazy;
      pi = next / next.sum();
      if (it % 64 == 0 && l1_residual(pi, P) < opts.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("stationary distribution did not converge", l1_residual(pi, P));
  }
  return pi.transpose();
}

TransitionModel build_model(const BigramCounts& counts, const StationaryOptions& opts) {
  const Eigen::Index n = counts.counts.rows();
  if (counts.counts.cols() != n || static_cast<std::size_t>(n) != counts.alphabet.size())
    throw DataError("count matrix does not match the alphabet");
  if ((counts.counts.array() < 0.0).any() || !counts.counts.allFinite())
    throw DataError("negative or non-finite bigram count");
  if (!(counts.counts.sum() > 0.0)) throw DataError("empty corpus");

  Eigen::MatrixXd P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = counts.counts.row(i).sum();
    if (s > 0.0)
      P.row(i) = counts.counts.row(i) / s;
    else
      P.row(i).setConstant(1.0 / static_cast<double>(n));
  }
  return make_model(counts.alphabet, P, opts);
}

TransitionModel make_model(const Alphabet& alphabet, const Eigen::MatrixXd& P,
                           const StationaryOptions& opts) {
  if (static_cast<std::size_t>(P.rows()) != alphabet.size())
    throw DataError("transition matrix does not match the alphabet");
  return {alphabet, P, stationary_distribution(P, opts)};
}

void validate_model(const TransitionModel& model, double tol) {
  require_stochastic(model.P);
  if (model.pi.size() != model.P.rows() || static_cast<std::size_t>(model.pi.size()) != model.alphabet.size())
    throw DataError("stationary vector size mismatch");
  if ((model.pi.array() < 0.0).any() || std::abs(model.pi.sum() - 1.0) > 1e-9)
    throw DataError("stationary vector is not a distribution");
  const Eigen::RowVectorXd pi = model.pi.transpose();
  if ((pi * model.P - pi).cwiseAbs().maxCoeff() > tol) throw DataError("pi is not stationary for P");
}

double stationary_gap(const TransitionModel& model, const Eigen::VectorXd& frequencies) {
  if (frequencies.size() != model.pi.size()) throw DataError("frequency vector size mismatch");
  return (model.pi - frequencies / frequencies.sum()).lpNorm<1>();
}

Eigen::MatrixXd absorption_matrix(const Eigen::MatrixXd& P, std::span<const int> through) {
  const Eigen::Index n = P.rows();
  const auto T = sorted_unique(through, n);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
  if (T.empty()) return Q;

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  const Eigen::MatrixXd P_TT = select(P, T, T);
  const Eigen::MatrixXd I_minus = Eigen::MatrixXd::Identity(P_TT.rows(), P_TT.cols()) - P_TT;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(I_minus);
  if (!(lu.rcond() > 1e-13)) throw DataError("absorbing subchain");
  const Eigen::MatrixXd solved = lu.solve(select(P, T, all));  // (I - P_T)^{-1} P_T·
  if (!solved.allFinite()) throw DataError("absorbing subchain");
  const Eigen::MatrixXd P_xT = select(P, all, T);
  Q = P_xT * solved;
  return Q;
}

double absorption_transition(const TransitionModel& model, std::span<const int> through, int i, int j) {
  const Eigen::Index n = model.P.rows();
  const auto T = sorted_unique(through, n);
  if (i < 0 || j < 0 || i >= n || j >= n) throw DataError("letter index out of range");
  if (std::binary_search(T.begin(), T.end(), i) || std::binary_search(T.begin(), T.end(), j))
    throw DataError("endpoints must lie outside the intermediate set");
  return absorption_matrix(model.P, T)(i, j);
}

TransitionModel censored_model(const TransitionModel& model, std::span<const int> keep) {
  const Eigen::Index n = model.P.rows();
  const auto K = sorted_unique(keep, n);
  if (K.size() < 2) throw DataError("censored chain needs at least two letters");
  const auto T = complement(K, n);
  Eigen::MatrixXd P = select(model.P, K, K);
  if (!T.empty()) P += select(absorption_matrix(model.P, T), K, K);
  for (Eigen::Index i = 0; i < P.rows(); ++i) P.row(i) /= P.row(i).sum();
  return make_model(model.alphabet.subset(K), P);
}

double h2_objective(const TransitionModel& model, const Partition& partition,
                    const Eigen::MatrixXd& dA, const Eigen::MatrixXd& dB) {
  if (!(partition.alphabet() == model.alphabet)) throw DataError("partition alphabet mismatch");
  const auto A = partition.cluster_a();
  const auto B = partition.cluster_b();
  if (dA.rows() != static_cast<Eigen::Index>(A.size()) || dA.cols() != dA.rows() ||
      dB.rows() != static_cast<Eigen::Index>(B.size()) || dB.cols() != dB.rows())
    throw DataError("cluster distance matrices do not match the partition");

  auto side = [&](const std::vector<int>& own, const std::vector<int>& other,
                  const Eigen::MatrixXd& d) {
    const Eigen::MatrixXd Q = absorption_matrix(model.P, other);
    double total = 0.0;
    for (std::size_t a = 0; a < own.size(); ++a)
      for (std::size_t b = 0; b < own.size(); ++b) {
        const int i = own[a], j = own[b];
        total += model.pi(i) * (model.P(i, j) + Q(i, j)) * d(a, b);
      }
    return total;
  };
  return side(A, B, dA) + side(B, A, dB);
}

}  // namespace keyforge
