#include "keyforge/multilang.hpp"

#include <cmath>
#include <limits>

#include "keyforge/error.hpp"
#include "keyforge/transport.hpp"

namespace keyforge {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

Eigen::VectorXd resolve_weights(const Eigen::VectorXd& weights, std::size_t count) {
  if (count == 0) throw DataError("barycenter needs at least one distribution");
  if (weights.size() == 0) return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(count), 1.0 / count);
  if (weights.size() != static_cast<Eigen::Index>(count)) throw DataError("weights do not match the inputs");
  if ((weights.array() < 0.0).any() || std::abs(weights.sum() - 1.0) > 1e-9)
    throw DataError("weights must be a probability vector");
  return weights;
}

void check_inputs(const std::vector<Eigen::VectorXd>& rows, const Eigen::MatrixXd& ground) {
  const Eigen::Index n = ground.rows();
  if (ground.cols() != n || n == 0) throw DataError("ground metric must be square");
  if (!ground.allFinite() || (ground.array() < 0.0).any()) throw DataError("ground metric must be finite and nonnegative");
  for (const auto& r : rows) {
    if (r.size() != n) throw DataError("distribution does not match the ground metric");
    if ((r.array() < 0.0).any() || std::abs(r.sum() - 1.0) > 1e-9) throw DataError("input is not a probability vector");
  }
}

double log_sum_exp(const Eigen::ArrayXd& a) {
  const double m = a.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((a - m).exp().sum());
}

Eigen::VectorXd exact_barycenter(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& w,
                                 const Eigen::MatrixXd& cost) {
  const auto n = cost.rows();
  const auto K = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index plan_vars = n * n, nvar = K * plan_vars + n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * K * n, nvar);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * K * n), c = Eigen::VectorXd::Zero(nvar);
  for (Eigen::Index k = 0; k < K; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index v = k * plan_vars + i * n + j;
        A(2 * k * n + i, v) = 1.0;      // row marginal
        A(2 * k * n + n + j, v) = 1.0;  // column marginal
        c(v) = w(k) * cost(i, j);
      }
  for (Eigen::Index k = 0; k < K; ++k) {
    b.segment(2 * k * n, n) = rows[k];
    for (Eigen::Index j = 0; j < n; ++j) A(2 * k * n + n + j, K * plan_vars + j) = -1.0;
  }
  const LpResult lp = solve_lp(A, b, c);
  return lp.x.tail(n);
}

// Log-domain iterative Bregman projections on dual potentials, which stay
// meaningful across ε levels and are carried over as warm starts.
Eigen::VectorXd entropic_barycenter(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& w,
                                    const Eigen::MatrixXd& cost, const BarycenterOptions& opts) {
  const auto n = cost.rows();
  const auto K = rows.size();
  std::vector<Eigen::ArrayXd> log_rows(K), F(K, Eigen::ArrayXd::Zero(n)), G(K, Eigen::ArrayXd::Zero(n)),
      log_q(K, Eigen::ArrayXd::Zero(n));
  for (std::size_t k = 0; k < K; ++k)
    log_rows[k] = rows[k].array().unaryExpr([](double x) { return x > 0.0 ? std::log(x) : kNegInf; });

  Eigen::ArrayXd p = Eigen::ArrayXd::Constant(n, 1.0 / n);
  double residual = std::numeric_limits<double>::infinity();
  for (double eps = opts.eps_start; eps >= opts.eps_end * (1.0 - 1e-12); eps *= opts.eps_factor) {
    residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_inner && residual > opts.tolerance; ++it) {
      Eigen::ArrayXd log_p = Eigen::ArrayXd::Zero(n);
      for (std::size_t k = 0; k < K; ++k) {
        for (Eigen::Index i = 0; i < n; ++i) {
          if (log_rows[k](i) == kNegInf) {
            F[k](i) = kNegInf;
            continue;
          }
          const Eigen::ArrayXd t = (G[k] - cost.row(i).transpose().array()) / eps;
          F[k](i) = eps * (log_rows[k](i) - log_sum_exp(t));
        }
        for (Eigen::Index j = 0; j < n; ++j) log_q[k](j) = log_sum_exp((F[k] - cost.col(j).array()) / eps);
        log_p += w(static_cast<Eigen::Index>(k)) * log_q[k];
      }
      for (std::size_t k = 0; k < K; ++k) G[k] = eps * (log_p - log_q[k]);
      Eigen::ArrayXd next = log_p.exp();
      next /= next.sum();
      residual = (next - p).abs().sum();
      p = next;
    }
    if (!std::isfinite(residual)) throw ConvergenceError("barycenter iteration diverged", residual);
  }
  if (residual > opts.tolerance) throw ConvergenceError("barycenter did not converge", residual);
  return p.matrix();
}

}  // namespace

double barycenter_objective(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& weights,
                            const Eigen::MatrixXd& ground, const Eigen::VectorXd& p) {
  check_inputs(rows, ground);
  const Eigen::VectorXd w = resolve_weights(weights, rows.size());
  const Eigen::MatrixXd cost = ground.cwiseProduct(ground);
  double total = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (w(static_cast<Eigen::Index>(k)) > 0.0)
      total += w(static_cast<Eigen::Index>(k)) * solve_transport(rows[k], p, cost).cost;
  return total;
}

Eigen::VectorXd row_barycenter(const std::vector<Eigen::VectorXd>& rows, const Eigen::VectorXd& weights,
                               const Eigen::MatrixXd& ground, const BarycenterOptions& opts) {
  check_inputs(rows, ground);
  const Eigen::VectorXd w = resolve_weights(weights, rows.size());

  // Degenerate cases with a known exact answer.
  bool identical = true;
  for (const auto& r : rows) identical = identical && r == rows.front();
  if (identical) return rows.front();
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (w(static_cast<Eigen::Index>(k)) == 1.0) return rows[k];

  std::vector<Eigen::VectorXd> active;
  Eigen::VectorXd active_w(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (w(static_cast<Eigen::Index>(k)) > 0.0) {
      active_w(static_cast<Eigen::Index>(active.size())) = w(static_cast<Eigen::Index>(k));
      active.push_back(rows[k]);
    }
  active_w.conservativeResize(static_cast<Eigen::Index>(active.size()));

  const Eigen::MatrixXd sq = ground.cwiseProduct(ground);
  const double max_cost = sq.maxCoeff();
  const Eigen::MatrixXd cost = max_cost > 0.0 ? Eigen::MatrixXd(sq / max_cost) : sq;

  Eigen::VectorXd p = ground.rows() <= opts.exact_max_support ? exact_barycenter(active, active_w, cost)
                                                             : entropic_barycenter(active, active_w, cost, opts);
  p = p.cwiseMax(0.0);
  p /= p.sum();

  // The entropic answer is approximate; keep whichever candidate, including
  // the inputs themselves, has the lowest exact objective.
  double best = barycenter_objective(active, active_w, ground, p);
  for (const auto& r : active) {
    const double v = barycenter_objective(active, active_w, ground, r);
    if (v < best) {
      best = v;
      p = r;
    }
  }
  return p;
}

TransitionModel barycenter_model(const LanguageEnsemble& ensemble, const Eigen::MatrixXd& ground,
                                 const BarycenterOptions& opts) {
  if (ensemble.models.empty()) throw DataError("empty language ensemble");
  const Alphabet& alphabet = ensemble.models.front().alphabet;
  for (const auto& m : ensemble.models)
    if (!(m.alphabet == alphabet)) throw DataError("ensemble models use different alphabets");
  const auto n = static_cast<Eigen::Index>(alphabet.size());
  if (ground.rows() != n || ground.cols() != n) throw DataError("ground metric does not match the alphabet");
  const Eigen::VectorXd w = resolve_weights(ensemble.weights, ensemble.models.size());

  Eigen::MatrixXd P(n, n);
  std::vector<Eigen::VectorXd> rows(ensemble.models.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < rows.size(); ++k) rows[k] = ensemble.models[k].P.row(r).transpose();
    const Eigen::VectorXd p = row_barycenter(rows, w, ground, opts);
    P.row(r) = p.transpose() / p.sum();
  }
  return make_model(alphabet, P);
}

}  // namespace keyforge
