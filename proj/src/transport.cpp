#include "keyforge/transport.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "keyforge/error.hpp"

namespace keyforge {

TransportPlan solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                              const Eigen::MatrixXd& cost) {
  const Eigen::Index m = supply.size(), k = demand.size();
  if (cost.rows() != m || cost.cols() != k) throw DataError("cost matrix shape mismatch");
  if ((supply.array() < 0.0).any() || (demand.array() < 0.0).any())
    throw DataError("negative transport mass");
  const double total = supply.sum();
  if (std::abs(total - demand.sum()) > 1e-9 * std::max(1.0, total))
    throw DataError("supply and demand totals differ");

  Eigen::VectorXd left = supply, need = demand;
  TransportPlan out{Eigen::MatrixXd::Zero(m, k), 0.0};
  const double eps = 1e-15 * std::max(1.0, total);
  const double inf = std::numeric_limits<double>::infinity();

  // Node 0 is a virtual root, 1..m the sources, m+1..m+k the sinks. Forward
  // arcs source→sink cost C; reverse arcs sink→source exist where flow is
  // positive. Dijkstra runs on reduced costs, which the potentials keep
  // nonnegative; rounding is clamped so the search tree stays acyclic.
  const Eigen::Index V = 1 + m + k;
  std::vector<double> pot(V, 0.0), dist(V);
  std::vector<Eigen::Index> pred(V);
  std::vector<char> done(V);
  for (Eigen::Index j = 0; j < k; ++j) {
    double lo = inf;
    for (Eigen::Index i = 0; i < m; ++i) lo = std::min(lo, cost(i, j));
    pot[1 + m + j] = m > 0 ? lo : 0.0;
  }
  auto reduced = [&](Eigen::Index u, Eigen::Index v, double c) { return std::max(0.0, c + pot[u] - pot[v]); };

  const long max_rounds = 16L * V * V + 64;
  long round = 0;
  for (; round < max_rounds; ++round) {
    if (left.sum() <= eps || need.sum() <= eps) break;
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(pred.begin(), pred.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[0] = 0.0;
    for (;;) {
      Eigen::Index u = -1;
      for (Eigen::Index v = 0; v < V; ++v)
        if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
      if (u < 0) break;
      done[u] = 1;
      auto relax = [&](Eigen::Index v, double c) {
        const double nd = dist[u] + reduced(u, v, c);
        if (nd < dist[v]) {
          dist[v] = nd;
          pred[v] = u;
        }
      };
      if (u == 0) {
        for (Eigen::Index i = 0; i < m; ++i)
          if (left(i) > eps) relax(1 + i, 0.0);
      } else if (u <= m) {
        for (Eigen::Index j = 0; j < k; ++j)
          if (!done[1 + m + j]) relax(1 + m + j, cost(u - 1, j));
      } else {
        const Eigen::Index j = u - 1 - m;
        for (Eigen::Index i = 0; i < m; ++i)
          if (out.plan(i, j) > eps && !done[1 + i]) relax(1 + i, -cost(i, j));
      }
    }

    Eigen::Index sink = -1;
    for (Eigen::Index j = 0; j < k; ++j) {
      const Eigen::Index v = 1 + m + j;
      if (need(j) > eps && dist[v] < inf && (sink < 0 || dist[v] + pot[v] < dist[1 + m + sink] + pot[1 + m + sink]))
        sink = j;
    }
    if (sink < 0) break;

    double reach = 0.0;
    for (Eigen::Index v = 0; v < V; ++v)
      if (dist[v] < inf) reach = std::max(reach, dist[v]);
    for (Eigen::Index v = 0; v < V; ++v) pot[v] += dist[v] < inf ? dist[v] : reach;

    // Walk back to the root, collecting the bottleneck.
    double amount = need(sink);
    Eigen::Index node = 1 + m + sink;
    while (pred[node] > 0) {
      const Eigen::Index p = pred[node];
      if (node <= m) amount = std::min(amount, out.plan(node - 1, p - 1 - m));  // reverse arc
      node = p;
    }
    const Eigen::Index source = node - 1;
    amount = std::min(amount, left(source));

    node = 1 + m + sink;
    while (pred[node] > 0) {
      const Eigen::Index p = pred[node];
      if (node > m) {
        out.plan(p - 1, node - 1 - m) += amount;
      } else {
        double& f = out.plan(node - 1, p - 1 - m);
        f -= amount;
        if (f <= eps) f = 0.0;
      }
      node = p;
    }
    left(source) -= amount;
    need(sink) -= amount;
  }
  if (left.sum() > 1e-9 * std::max(1.0, total)) throw DataError("transport solver did not terminate");

  out.plan = out.plan.cwiseMax(0.0);
  out.cost = (out.plan.array() * cost.array()).sum();
  return out;
}

LpResult solve_lp(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in, const Eigen::VectorXd& c) {
  const Eigen::Index rows = A_in.rows(), nvar = A_in.cols();
  if (b_in.size() != rows || c.size() != nvar) throw DataError("LP dimension mismatch");
  constexpr double tol = 1e-11;

  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (Eigen::Index r = 0; r < rows; ++r)
    if (b(r) < 0) {
      A.row(r) *= -1.0;
      b(r) *= -1.0;
    }

  // Tableau columns: original variables, artificials, rhs.
  const Eigen::Index cols = nvar + rows;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(rows, cols + 1);
  T.leftCols(nvar) = A;
  T.block(0, nvar, rows, rows).setIdentity();
  T.col(cols) = b;
  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index r = 0; r < rows; ++r) basis[r] = nvar + r;

  auto pivot = [&](Eigen::Index r, Eigen::Index col) {
    T.row(r) /= T(r, col);
    for (Eigen::Index i = 0; i < rows; ++i)
      if (i != r && T(i, col) != 0.0) T.row(i) -= T(i, col) * T.row(r);
    basis[r] = col;
  };

  // Bland's rule: lowest-index entering column with negative reduced cost,
  // lowest-index basic variable among ratio ties.
  auto run = [&](const Eigen::VectorXd& cost, Eigen::Index allowed) {
    for (int guard = 0; guard < 100000; ++guard) {
      Eigen::VectorXd cb(rows);
      for (Eigen::Index r = 0; r < rows; ++r) cb(r) = cost(basis[r]);
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        const double reduced = cost(j) - cb.dot(T.col(j));
        if (reduced < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (T(r, enter) <= tol) continue;
        const double ratio = T(r, cols) / T(r, enter);
        if (ratio < best - tol || (leave >= 0 && std::abs(ratio - best) <= tol && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) throw DataError("LP is unbounded");
      pivot(leave, enter);
    }
    throw DataError("LP simplex iteration limit reached");
  };

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(cols);
  phase1.tail(rows).setOnes();
  run(phase1, cols);
  double infeas = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[r] >= nvar) infeas += T(r, cols);
  if (infeas > 1e-8 * std::max(1.0, b.sum())) throw DataError("LP is infeasible");

  // Drive remaining artificials out of the basis; rows that cannot pivot are redundant.
  std::vector<char> redundant(rows, 0);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (basis[r] < nvar) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < nvar; ++j)
      if (std::abs(T(r, j)) > 1e-9) {
        col = j;
        break;
      }
    if (col >= 0)
      pivot(r, col);
    else
      redundant[r] = 1;
  }
  for (Eigen::Index r = 0; r < rows; ++r)
    if (redundant[r]) {
      T.row(r).setZero();
      T(r, basis[r]) = 1.0;
    }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols);
  phase2.head(nvar) = c;
  run(phase2, nvar);

  LpResult res{Eigen::VectorXd::Zero(nvar), 0.0};
  for (Eigen::Index r = 0; r < rows; ++r)
    if (basis[r] < nvar) res.x(basis[r]) = std::max(0.0, T(r, cols));
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace keyforge
