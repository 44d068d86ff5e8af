#include "keyforge/assignment.hpp"

#include <cmath>
#include <limits>

#include "keyforge/error.hpp"

namespace keyforge {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest augmenting path Hungarian method for rows ≤ cols. Rows beyond the
// real ones would be zero-cost dummies, which never change the optimum, so
// the rectangular form is solved directly.
std::vector<int> hungarian(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows()), m = static_cast<int>(a.cols());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> cols(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) cols[p[j] - 1] = j - 1;
  return cols;
}

double row_order_cost(const Eigen::MatrixXd& a, const std::vector<int>& cols) {
  double s = 0.0;
  for (std::size_t r = 0; r < cols.size(); ++r) s += a(static_cast<Eigen::Index>(r), cols[r]);
  return s;
}

// Optimum of the subproblem on rows [first, n) and the free columns.
double sub_optimum(const Eigen::MatrixXd& a, int first, const std::vector<char>& taken) {
  const int n = static_cast<int>(a.rows());
  if (first >= n) return 0.0;
  std::vector<int> free_cols;
  for (int j = 0; j < a.cols(); ++j)
    if (!taken[j]) free_cols.push_back(j);
  Eigen::MatrixXd sub(n - first, static_cast<Eigen::Index>(free_cols.size()));
  for (int r = first; r < n; ++r)
    for (std::size_t k = 0; k < free_cols.size(); ++k) sub(r - first, k) = a(r, free_cols[k]);
  const auto cols = hungarian(sub);
  return row_order_cost(sub, cols);
}

}  // namespace

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() > cost.cols()) throw DataError("more rows than columns in assignment");
  if (!cost.allFinite()) throw DataError("non-finite assignment cost");
  Assignment out;
  if (cost.rows() == 0) return out;

  const auto first = hungarian(cost);
  const double opt = row_order_cost(cost, first);
  const double tol = 1e-12 * std::max(1.0, std::abs(opt));

  // Fix rows one at a time to the smallest column that still admits an
  // optimal completion.
  const int n = static_cast<int>(cost.rows()), m = static_cast<int>(cost.cols());
  std::vector<char> taken(m, 0);
  out.cols.assign(n, -1);
  double fixed = 0.0;
  for (int r = 0; r < n; ++r) {
    int chosen = -1, fallback = -1;
    double fallback_total = kInf;
    for (int c = 0; c < m && chosen < 0; ++c) {
      if (taken[c]) continue;
      taken[c] = 1;
      const double total = fixed + cost(r, c) + sub_optimum(cost, r + 1, taken);
      taken[c] = 0;
      if (total <= opt + tol) chosen = c;
      if (total < fallback_total) {
        fallback_total = total;
        fallback = c;
      }
    }
    if (chosen < 0) chosen = fallback;
    taken[chosen] = 1;
    out.cols[r] = chosen;
    fixed += cost(r, chosen);
  }
  out.cost = row_order_cost(cost, out.cols);
  return out;
}

}  // namespace keyforge
