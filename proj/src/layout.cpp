#include "keyforge/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "keyforge/error.hpp"
#include "keyforge/parallel.hpp"

namespace keyforge {
namespace {

Cell cell_of(const KeyGrid& grid, int index) { return {index / grid.cols, index % grid.cols}; }

void check_capacity(std::size_t n, const KeyGrid& grid) {
  if (grid.rows < 1 || grid.cols < 1) throw DataError("grid must have at least one row and column");
  if (n > grid.capacity()) throw DataError("alphabet does not fit on the grid");
}

}  // namespace

Points KeyGrid::positions() const {
  Points p(static_cast<Eigen::Index>(capacity()), 2);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) p.row(r * cols + c) = cell_position({r, c});
  return p;
}

Points KeyboardLayout::positions() const {
  Points p(static_cast<Eigen::Index>(keys.size()), 2);
  for (std::size_t i = 0; i < keys.size(); ++i) p.row(static_cast<Eigen::Index>(i)) = cell_position(keys[i]);
  return p;
}

void KeyboardLayout::validate() const {
  if (keys.size() != alphabet.size()) throw DataError("layout does not place every letter");
  if (grid.rows < 1 || grid.cols < 1) throw DataError("layout grid is empty");
  std::set<Cell> seen;
  for (const auto& k : keys) {
    if (k.row < 0 || k.row >= grid.rows || k.col < 0 || k.col >= grid.cols)
      throw DataError("layout key outside its grid");
    if (!seen.insert(k).second) throw DataError("two letters share a key");
  }
}

KeyboardLayout binsort_match(const Embedding2D& emb, const KeyGrid& grid) {
  const auto n = static_cast<int>(emb.points.rows());
  check_capacity(static_cast<std::size_t>(n), grid);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& p = emb.points;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (p(a, 1) != p(b, 1)) return p(a, 1) > p(b, 1);
    if (p(a, 0) != p(b, 0)) return p(a, 0) < p(b, 0);
    return a < b;
  });

  KeyboardLayout layout{emb.alphabet, grid, std::vector<Cell>(n)};
  for (int start = 0, row = 0; start < n; start += grid.cols, ++row) {
    const int end = std::min(n, start + grid.cols);
    std::sort(order.begin() + start, order.begin() + end, [&](int a, int b) {
      if (p(a, 0) != p(b, 0)) return p(a, 0) < p(b, 0);
      return a < b;
    });
    for (int k = start; k < end; ++k) layout.keys[order[k]] = {row, k - start};
  }
  return layout;
}

Assignment assign_points(const Points& points, const Points& keys) {
  Eigen::MatrixXd cost(points.rows(), keys.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = 0; j < keys.rows(); ++j) cost(i, j) = (points.row(i) - keys.row(j)).squaredNorm();
  return solve_assignment(cost);
}

KeyboardLayout assign_lp(const Embedding2D& emb, const KeyGrid& grid) {
  check_capacity(static_cast<std::size_t>(emb.points.rows()), grid);
  const auto match = assign_points(emb.points, grid.positions());
  KeyboardLayout layout{emb.alphabet, grid, {}};
  for (int j : match.cols) layout.keys.push_back(cell_of(grid, j));
  return layout;
}

double assignment_cost(const Embedding2D& emb, const KeyboardLayout& layout) {
  const Points keys = layout.positions();
  double s = 0.0;
  for (Eigen::Index i = 0; i < keys.rows(); ++i) s += (emb.points.row(i) - keys.row(i)).squaredNorm();
  return s;
}

Embedding2D normalize_to_grid(const Embedding2D& emb, const KeyGrid& grid) {
  const Points keys = grid.positions();
  const double emb_trace = covariance(emb.points).trace();
  if (!(emb_trace > 0.0)) throw DataError("embedding has zero variance");
  const double scale = std::sqrt(covariance(keys).trace() / emb_trace);
  Embedding2D out = emb;
  out.points.rowwise() -= emb.points.colwise().mean();
  out.points *= scale;
  out.points.rowwise() += keys.colwise().mean();
  return out;
}

double qap_objective(const TransitionModel& model, const KeyboardLayout& layout) {
  if (!(model.alphabet == layout.alphabet)) throw DataError("layout alphabet does not match the model");
  const Points pos = layout.positions();
  const Eigen::Index n = pos.rows();
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) s += model.pi(i) * model.P(i, j) * (pos.row(i) - pos.row(j)).norm();
  return s;
}

KeyboardLayout qap_bruteforce(const TransitionModel& model, const KeyGrid& grid) {
  const auto n = static_cast<int>(model.size());
  if (static_cast<std::size_t>(n) > kMaxQapLetters) throw DataError("QAP brute force is limited to 8 letters");
  check_capacity(static_cast<std::size_t>(n), grid);
  const Points cells = grid.positions();
  const int m = static_cast<int>(cells.rows());
  double injections = 1.0;
  for (int i = 0; i < n; ++i) injections *= m - i;
  if (injections > 5e7) throw DataError("QAP brute force instance too large for the grid");

  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = model.pi(i) * model.P(i, j) + model.pi(j) * model.P(j, i);
  const Eigen::MatrixXd dist = pairwise_distances(cells);

  std::vector<int> cur(n, -1), best;
  std::vector<char> used(m, 0);
  double best_cost = std::numeric_limits<double>::infinity();
  // Depth-first over cell sequences in lexicographic order; only a strictly
  // better cost replaces the incumbent.
  auto dfs = [&](auto&& self, int i, double acc) -> void {
    if (i == n) {
      if (best.empty() || acc < best_cost - 1e-12 * std::max(1.0, std::abs(best_cost))) {
        best_cost = acc;
        best = cur;
      }
      return;
    }
    for (int c = 0; c < m; ++c) {
      if (used[c]) continue;
      double add = 0.0;
      for (int j = 0; j < i; ++j) add += w(i, j) * dist(c, cur[j]);
      used[c] = 1;
      cur[i] = c;
      self(self, i + 1, acc + add);
      used[c] = 0;
    }
  };
  dfs(dfs, 0, 0.0);

  KeyboardLayout layout{model.alphabet, grid, {}};
  for (int c : best) layout.keys.push_back(cell_of(grid, c));
  return layout;
}

namespace {

// Clusters too small for a planar embedding are laid out in letter order.
LayoutBuild small_layout(const Alphabet& alphabet, const KeyGrid& grid, const OptimizerConfig& cfg,
                         const std::optional<TransitionModel>& model) {
  check_capacity(alphabet.size(), grid);
  LayoutBuild out;
  out.layout = {alphabet, grid, {}};
  for (std::size_t i = 0; i < alphabet.size(); ++i) out.layout.keys.push_back(cell_of(grid, static_cast<int>(i)));
  out.embedding = {alphabet, out.layout.positions(), 0.0};
  if (model && alphabet.size() == 2) {
    out.distances = greedy_unregularized(*model, cfg);
  } else {
    out.distances = {alphabet, Eigen::MatrixXd::Zero(alphabet.size(), alphabet.size()), cfg};
  }
  return out;
}

}  // namespace

LayoutBuild build_h1_layout(const TransitionModel& model, const OptimizerConfig& cfg,
                            const KeyGrid& grid) {
  check_capacity(model.size(), grid);
  if (model.size() < 3) return small_layout(model.alphabet, grid, cfg, model);

  const H1Solution sol = optimize_h1(model, cfg);
  const Embedding2D emb = mds_embed(sol.distances);
  const Embedding2D aligned = align_to_grid(emb);

  LayoutBuild out;
  out.distances = sol.distances;
  out.stress = emb.stress;
  out.iterations = sol.iterations;
  for (bool flip : {false, true}) {
    Embedding2D candidate = aligned;
    if (flip) candidate.points.col(0) *= -1.0;
    candidate = normalize_to_grid(candidate, grid);
    KeyboardLayout layout = assign_lp(candidate, grid);
    const double cost = assignment_cost(candidate, layout);
    if (!flip || cost < out.assignment_cost) {
      out.layout = std::move(layout);
      out.embedding = std::move(candidate);
      out.assignment_cost = cost;
      out.flipped = flip;
    }
  }
  return out;
}

KeyboardLayout merge_layouts(const Alphabet& alphabet, const KeyboardLayout& left,
                             const KeyboardLayout& right) {
  KeyboardLayout merged{alphabet, {std::max(left.grid.rows, right.grid.rows),
                                   left.grid.cols + 1 + right.grid.cols}, {}};
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const int l = left.alphabet.index(alphabet[i]);
    const int r = right.alphabet.index(alphabet[i]);
    if ((l >= 0) == (r >= 0)) throw DataError("each letter must belong to exactly one sub-layout");
    merged.keys.push_back(l >= 0 ? left.keys[l] : Cell{right.keys[r].row, right.keys[r].col + left.grid.cols + 1});
  }
  merged.validate();
  return merged;
}

KeyGrid fit_grid(std::size_t letters, int rows) {
  if (rows < 1) throw DataError("grid needs at least one row");
  const auto r = static_cast<std::size_t>(rows);
  return {rows, static_cast<int>(std::max<std::size_t>(1, (letters + r - 1) / r))};
}

H2Build build_h2_from_partition(const TransitionModel& model, const OptimizerConfig& cfg,
                                const Partition& partition, const KeyGrid& left_grid,
                                const KeyGrid& right_grid, unsigned threads) {
  if (!(partition.alphabet() == model.alphabet)) throw DataError("partition alphabet does not match the model");
  auto big = partition.cluster_a(), small = partition.cluster_b();
  if (small.size() > big.size()) std::swap(big, small);
  if (big.size() > left_grid.capacity() || small.size() > right_grid.capacity())
    throw DataError("cluster larger than its grid");

  const std::vector<int>* clusters[2] = {&big, &small};
  const KeyGrid* grids[2] = {&left_grid, &right_grid};
  LayoutBuild sides[2];
  parallel_for(2, threads, [&](std::size_t s) {
    const auto& keep = *clusters[s];
    if (keep.size() < 2) {
      sides[s] = small_layout(model.alphabet.subset(keep), *grids[s], cfg, std::nullopt);
      return;
    }
    sides[s] = build_h1_layout(censored_model(model, keep), cfg, *grids[s]);
  });

  return {merge_layouts(model.alphabet, sides[0].layout, sides[1].layout), partition,
          std::move(sides[0]), std::move(sides[1]), partition_objective(model, partition)};
}

H2Build build_h2_layout(const TransitionModel& model, const OptimizerConfig& cfg,
                        const KeyGrid& left_grid, const KeyGrid& right_grid,
                        const PartitionSearchOptions& search) {
  return build_h2_from_partition(model, cfg, best_partition_exact(model, search), left_grid, right_grid,
                                 search.threads);
}

H2Build build_h2_layout(const TransitionModel& model, const OptimizerConfig& cfg, int rows,
                        const PartitionSearchOptions& search) {
  const Partition partition = best_partition_exact(model, search);
  const std::size_t a = partition.cluster_a().size(), b = partition.cluster_b().size();
  return build_h2_from_partition(model, cfg, partition, fit_grid(std::max(a, b), rows),
                                 fit_grid(std::min(a, b), rows), search.threads);
}

}  // namespace keyforge
