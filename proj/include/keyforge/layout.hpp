#pragma once

#include <compare>
#include <vector>

#include <Eigen/Dense>

#include "keyforge/assignment.hpp"
#include "keyforge/cluster.hpp"
#include "keyforge/embed.hpp"
#include "keyforge/geometry.hpp"
#include "keyforge/markov.hpp"
#include "keyforge/metric_opt.hpp"

namespace keyforge {

/// Unit-spaced rectangular grid; cell (r, c) sits at (c, -r). No row stagger.
struct KeyGrid {
  int rows = 3;
  int cols = 9;

  std::size_t capacity() const noexcept { return static_cast<std::size_t>(rows) * cols; }
  /// All cell positions in row-major order.
  Points positions() const;

  bool operator==(const KeyGrid&) const = default;
};

struct Cell {
  int row = 0;
  int col = 0;
  auto operator<=>(const Cell&) const = default;
};

inline Eigen::RowVector2d cell_position(const Cell& c) {
  return {static_cast<double>(c.col), -static_cast<double>(c.row)};
}

/// Injective letter → cell map. keys[i] is the cell of alphabet letter i.
struct KeyboardLayout {
  Alphabet alphabet;
  KeyGrid grid;
  std::vector<Cell> keys;

  Points positions() const;
  /// Throws DataError unless every letter sits on a distinct in-grid cell.
  void validate() const;
};

/// Sorts by y (descending), chunks into rows of `cols` keys, sorts each row
/// by x. Ties in y go to the lower x, then to the lower letter index.
KeyboardLayout binsort_match(const Embedding2D& emb, const KeyGrid& grid);

/// Optimal injective matching of points to keys under squared distance.
Assignment assign_points(const Points& points, const Points& keys);

/// Exact minimum of Σ ‖l_i - k_j‖² over injective matchings. Expects the
/// embedding already aligned and normalized to the grid.
KeyboardLayout assign_lp(const Embedding2D& emb, const KeyGrid& grid);

/// Σ ‖l_i - key(i)‖² for an existing layout.
double assignment_cost(const Embedding2D& emb, const KeyboardLayout& layout);

/// Translates the embedding onto the grid centroid and scales it so both
/// point sets have the same covariance trace.
Embedding2D normalize_to_grid(const Embedding2D& emb, const KeyGrid& grid);

/// Σ_{i,j} π_i P_ij ‖key(i) - key(j)‖.
double qap_objective(const TransitionModel& model, const KeyboardLayout& layout);

inline constexpr std::size_t kMaxQapLetters = 8;

/// Exhaustive minimizer of qap_objective over all injections (n ≤ 8). Ties go
/// to the lexicographically smallest cell sequence.
KeyboardLayout qap_bruteforce(const TransitionModel& model, const KeyGrid& grid);

struct LayoutBuild {
  KeyboardLayout layout;
  DistanceMatrix distances;
  Embedding2D embedding;  // aligned and normalized to the grid
  double stress = 0.0;
  double assignment_cost = 0.0;
  bool flipped = false;  // horizontal reflection won
  int iterations = 0;
};

/// optimize_h1 → mds_embed → align_to_grid → normalize → assign_lp, trying
/// the identity and the horizontal flip and keeping the cheaper matching.
LayoutBuild build_h1_layout(const TransitionModel& model, const OptimizerConfig& cfg,
                            const KeyGrid& grid);

struct H2Build {
  KeyboardLayout layout;  // merged
  Partition partition;
  LayoutBuild left;
  LayoutBuild right;
  double partition_objective = 0.0;
};

/// Places `right` to the right of `left` with one empty gap column.
KeyboardLayout merge_layouts(const Alphabet& alphabet, const KeyboardLayout& left,
                             const KeyboardLayout& right);

/// Smallest grid with `rows` rows that holds `letters` keys.
KeyGrid fit_grid(std::size_t letters, int rows = 3);

/// build_h1_layout on the censored chain of each cluster of a fixed
/// partition. The larger cluster goes to the left grid.
H2Build build_h2_from_partition(const TransitionModel& model, const OptimizerConfig& cfg,
                                const Partition& partition, const KeyGrid& left_grid,
                                const KeyGrid& right_grid, unsigned threads = 1);

/// Exact partition search followed by build_h2_from_partition.
H2Build build_h2_layout(const TransitionModel& model, const OptimizerConfig& cfg,
                        const KeyGrid& left_grid, const KeyGrid& right_grid,
                        const PartitionSearchOptions& search = {});

/// As above with both grids sized by fit_grid for the clusters found.
H2Build build_h2_layout(const TransitionModel& model, const OptimizerConfig& cfg, int rows,
                        const PartitionSearchOptions& search = {});

}  // namespace keyforge
