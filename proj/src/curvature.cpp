#include "keyforge/curvature.hpp"

#include <algorithm>
#include <numeric>

#include "keyforge/error.hpp"
#include "keyforge/parallel.hpp"
#include "keyforge/transport.hpp"

namespace keyforge {

DiscreteMeasure knn_measure(const TransitionModel& model, const Eigen::MatrixXd& d, int x, int k) {
  const int n = static_cast<int>(model.size());
  if (d.rows() != n || d.cols() != n) throw DataError("distance matrix does not match the model");
  if (x < 0 || x >= n) throw DataError("letter index out of range");
  if (k < 1 || k > n) throw DataError("k must lie in [1, n]");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if ((a == x) != (b == x)) return a == x;
    return d(x, a) < d(x, b);
  });

  DiscreteMeasure mu;
  mu.support.assign(order.begin(), order.begin() + k);
  mu.weights.resize(k);
  for (int i = 0; i < k; ++i) mu.weights(i) = model.P(x, mu.support[i]);
  const double mass = mu.weights.sum();
  if (mass > 0.0) {
    mu.weights /= mass;
  } else {
    mu.weights.setConstant(1.0 / k);
    mu.fallback = true;
  }
  return mu;
}

double wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const Eigen::MatrixXd& d) {
  const auto m = static_cast<Eigen::Index>(mu.support.size());
  const auto k = static_cast<Eigen::Index>(nu.support.size());
  Eigen::MatrixXd cost(m, k);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < k; ++j) cost(i, j) = d(mu.support[i], nu.support[j]);
  return solve_transport(mu.weights, nu.weights, cost).cost;
}

double ricci_edge(const TransitionModel& model, const Eigen::MatrixXd& d, int x, int y, int k) {
  if (x == y) throw DataError("curvature needs two distinct letters");
  const auto mx = knn_measure(model, d, x, k);
  const auto my = knn_measure(model, d, y, k);
  return 1.0 - wasserstein(mx, my, d) / d(x, y);
}

const LetterCurvature& CurvatureReport::at(int k, int letter) const {
  const auto n = static_cast<int>(alphabet.size());
  if (k < k_min || k > k_max || letter < 0 || letter >= n) throw DataError("curvature entry out of range");
  return entries[static_cast<std::size_t>((k - k_min) * n + letter)];
}

CurvatureReport gauss_curvatures(const TransitionModel& model, const Eigen::MatrixXd& d,
                                 int k_min, int k_max, unsigned threads) {
  const int n = static_cast<int>(model.size());
  if (k_min < 2 || k_max < k_min || k_max > n) throw DataError("k range must satisfy 2 <= k_min <= k_max <= n");
  const int ks = k_max - k_min + 1;

  std::vector<DiscreteMeasure> measures(static_cast<std::size_t>(ks * n));
  parallel_for(measures.size(), threads, [&](std::size_t idx) {
    const int k = k_min + static_cast<int>(idx) / n, x = static_cast<int>(idx) % n;
    measures[idx] = knn_measure(model, d, x, k);
  });

  CurvatureReport report;
  report.alphabet = model.alphabet;
  report.k_min = k_min;
  report.k_max = k_max;
  report.entries.resize(measures.size());
  parallel_for(measures.size(), threads, [&](std::size_t idx) {
    const int k = k_min + static_cast<int>(idx) / n, x = static_cast<int>(idx) % n;
    const auto& mx = measures[idx];
    LetterCurvature& e = report.entries[idx];
    e.k = k;
    e.letter = x;
    e.fallback = mx.fallback;
    e.neighbors.assign(mx.support.begin() + 1, mx.support.end());
    for (int y : e.neighbors) {
      const auto& my = measures[static_cast<std::size_t>((k - k_min) * n + y)];
      e.fallback = e.fallback || my.fallback;
      e.kappas.push_back(1.0 - wasserstein(mx, my, d) / d(x, y));
    }
    e.kappa_min = *std::min_element(e.kappas.begin(), e.kappas.end());
    e.kappa_max = *std::max_element(e.kappas.begin(), e.kappas.end());
    e.gauss = e.kappa_max * e.kappa_min;
  });

  report.mean_gauss = Eigen::VectorXd::Zero(n);
  for (int x = 0; x < n; ++x) {
    double s = 0.0;
    for (int k = k_min; k <= k_max; ++k) s += report.at(k, x).gauss;
    report.mean_gauss(x) = s / ks;
  }
  return report;
}

}  // namespace keyforge
