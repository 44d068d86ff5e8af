#include "keyforge/metric_opt.hpp"

#include <cmath>

#include "keyforge/geometry.hpp"

namespace keyforge {
namespace {

bool norm_bound_is_slack(std::size_t pairs, const OptimizerConfig& cfg) {
  return cfg.c * cfg.c <= static_cast<double>(pairs) * cfg.d_min * cfg.d_min;
}

DistanceMatrix wrap(const TransitionModel& model, const Eigen::VectorXd& x,
                    const OptimizerConfig& cfg) {
  return {model.alphabet, from_upper_triangle(x, model.size()), cfg};
}

}  // namespace

Eigen::VectorXd pair_weights(const TransitionModel& model) {
  const Eigen::Index n = model.P.rows();
  Eigen::VectorXd w(static_cast<Eigen::Index>(pair_count(static_cast<std::size_t>(n))));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      w(k++) = model.pi(i) * model.P(i, j) + model.pi(j) * model.P(j, i);
  return w;
}

double long_run_cost(const TransitionModel& model, const Eigen::MatrixXd& d) {
  if (d.rows() != model.P.rows() || d.cols() != model.P.cols())
    throw DataError("distance matrix does not match the model");
  double total = 0.0;
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (i != j) total += model.pi(i) * model.P(i, j) * d(i, j);
  return total;
}

double h1_objective(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double alpha) {
  return ordered_sum(w.cwiseProduct(x)) + alpha * ordered_sum(x.cwiseAbs2());
}

Eigen::VectorXd h1_gradient(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double alpha) {
  return w + 2.0 * alpha * x;
}

Eigen::VectorXd retract_feasible(const Eigen::VectorXd& x, const OptimizerConfig& cfg) {
  Eigen::VectorXd y = x.cwiseMax(cfg.d_min);
  const double norm2 = ordered_sum(y.cwiseAbs2());
  const double target = cfg.c * cfg.c;
  if (norm2 >= target) return y;

  Eigen::VectorXd excess = y.array() - cfg.d_min;
  double a = ordered_sum(excess.cwiseAbs2());
  if (!(a > 0.0)) {
    excess.setOnes();
    a = static_cast<double>(excess.size());
  }
  // ‖d_min + s·e‖² = c²  ⇔  a s² + b s + k = 0 with k < 0.
  const double b = 2.0 * cfg.d_min * ordered_sum(excess);
  const double k = static_cast<double>(y.size()) * cfg.d_min * cfg.d_min - target;
  const double s = (-b + std::sqrt(b * b - 4.0 * a * k)) / (2.0 * a);
  return (cfg.d_min + s * excess.array()).matrix();
}

DistanceMatrix greedy_unregularized(const TransitionModel& model, const OptimizerConfig& cfg) {
  cfg.validate();
  const std::size_t m = pair_count(model.size());
  if (cfg.c * cfg.c < static_cast<double>(m) * cfg.d_min * cfg.d_min)
    throw DataError("infeasible config: c^2 < n(n-1)/2 * d_min^2");

  const Eigen::VectorXd w = pair_weights(model);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < w.size(); ++k)
    if (w(k) < w(best)) best = k;

  Eigen::VectorXd x = Eigen::VectorXd::Constant(w.size(), cfg.d_min);
  x(best) = std::sqrt(cfg.c * cfg.c - static_cast<double>(m - 1) * cfg.d_min * cfg.d_min);
  return wrap(model, x, cfg);
}

H1Solution optimize_h1(const TransitionModel& model, const OptimizerConfig& cfg,
                       const std::optional<Eigen::MatrixXd>& start) {
  cfg.validate();
  const std::size_t n = model.size();
  const std::size_t m = pair_count(n);
  const Eigen::VectorXd w = pair_weights(model);

  if (norm_bound_is_slack(m, cfg)) {
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m), cfg.d_min);
    const double f = h1_objective(w, x, cfg.alpha);
    return {wrap(model, x, cfg), f, 0.0, 0, {f}};
  }

  Eigen::VectorXd x;
  if (start) {
    if (start->rows() != static_cast<Eigen::Index>(n) || start->cols() != start->rows())
      throw DataError("start matrix does not match the model");
    x = retract_feasible(upper_triangle(0.5 * (*start + start->transpose())), cfg);
  } else {
    x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m),
                                  std::max(cfg.d_min, cfg.c / std::sqrt(static_cast<double>(m))));
  }

  double f = h1_objective(w, x, cfg.alpha);
  H1Solution sol;
  sol.trace.push_back(f);
  double change = 0.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Eigen::VectorXd g = h1_gradient(w, x, cfg.alpha);
    double step = cfg.step_size;
    Eigen::VectorXd y;
    double fy = f;
    for (;;) {
      y = retract_feasible(x - step * g, cfg);
      fy = h1_objective(w, y, cfg.alpha);
      if (fy <= f) break;
      step *= 0.5;
      if (step < 1e-30) {
        y = x;
        fy = f;
        break;
      }
    }
    change = (y - x).lpNorm<Eigen::Infinity>();
    x = std::move(y);
    f = fy;
    sol.trace.push_back(f);
    if (change < cfg.tolerance) {
      sol.distances = wrap(model, x, cfg);
      sol.objective = f;
      sol.residual = change;
      sol.iterations = it;
      return sol;
    }
  }
  throw H1ConvergenceError(from_upper_triangle(x, n), change);
}

}  // namespace keyforge
