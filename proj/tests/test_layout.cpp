#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "keyforge/bench.hpp"
#include "keyforge/error.hpp"
#include "keyforge/layout.hpp"
#include "oracles.hpp"

using namespace keyforge;
using doctest::Approx;

namespace {

Eigen::MatrixXd squared_costs(const Points& a, const Points& b) {
  Eigen::MatrixXd c(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.rows(); ++j) c(i, j) = (a.row(i) - b.row(j)).squaredNorm();
  return c;
}

Embedding2D cloud(const std::string& letters, std::mt19937_64& rng, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  Embedding2D e{Alphabet(letters), Points(letters.size(), 2), 0.0};
  for (Eigen::Index i = 0; i < e.points.rows(); ++i) e.points.row(i) << u(rng), u(rng);
  return e;
}

KeyboardLayout random_layout(const Alphabet& alphabet, const KeyGrid& grid, std::mt19937_64& rng) {
  std::vector<int> cells(grid.capacity());
  std::iota(cells.begin(), cells.end(), 0);
  std::shuffle(cells.begin(), cells.end(), rng);
  KeyboardLayout l{alphabet, grid, {}};
  for (std::size_t i = 0; i < alphabet.size(); ++i) l.keys.push_back({cells[i] / grid.cols, cells[i] % grid.cols});
  return l;
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("assignment matches brute force") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int rows = 1 + trial % 7, cols = rows + trial % 3;
    Eigen::MatrixXd c(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) c(i, j) = trial % 2 ? std::floor(u(rng)) : u(rng);
    const auto a = solve_assignment(c);
    CHECK(a.cost == Approx(oracle::brute_assignment(c)).epsilon(1e-12));
    CHECK(std::set<int>(a.cols.begin(), a.cols.end()).size() == static_cast<std::size_t>(rows));
  }
  CHECK_THROWS_AS(solve_assignment(Eigen::MatrixXd::Zero(3, 2)), DataError);
}

TEST_CASE("assignment ties go to the smallest column vector") {
  const auto a = solve_assignment(Eigen::MatrixXd::Zero(3, 5));
  CHECK(a.cols == std::vector<int>{0, 1, 2});
  Eigen::MatrixXd c(2, 3);
  c << 1, 1, 0, 1, 1, 0;
  CHECK(solve_assignment(c).cols == std::vector<int>{0, 2});
}

TEST_CASE("grid geometry") {
  const KeyGrid g{2, 3};
  const Points p = g.positions();
  CHECK(p.rows() == 6);
  CHECK(p(4, 0) == 1.0);
  CHECK(p(4, 1) == -1.0);
  CHECK(fit_grid(21) == KeyGrid{3, 7});
  CHECK(fit_grid(5) == KeyGrid{3, 2});
  CHECK(fit_grid(1) == KeyGrid{3, 1});
  KeyboardLayout bad{Alphabet("ab"), {1, 2}, {{0, 0}, {0, 0}}};
  CHECK_THROWS_AS(bad.validate(), DataError);
  bad.keys[1] = {1, 0};
  CHECK_THROWS_AS(bad.validate(), DataError);
}

TEST_CASE("bin sort") {
  const KeyGrid line{1, 3};
  Embedding2D e{Alphabet("abc"), line.positions(), 0.0};
  const auto l = binsort_match(e, line);
  CHECK(l.keys == std::vector<Cell>{{0, 0}, {0, 1}, {0, 2}});

  Embedding2D sq{Alphabet("abcd"), Points(4, 2), 0.0};
  sq.points << 1, 1, -1, 1, 1, -1, -1, -1;
  const auto s = binsort_match(sq, KeyGrid{2, 2});
  CHECK(s.keys == std::vector<Cell>{{0, 1}, {0, 0}, {1, 1}, {1, 0}});

  Embedding2D tie{Alphabet("abc"), Points(3, 2), 0.0};
  tie.points << 0, 0, 0, 0, -1, 0;
  const auto t = binsort_match(tie, KeyGrid{1, 3});
  CHECK(t.keys == std::vector<Cell>{{0, 1}, {0, 2}, {0, 0}});

  CHECK_THROWS_AS(binsort_match(sq, KeyGrid{1, 3}), DataError);
}

TEST_CASE("exact matching") {
  std::mt19937_64 rng(72);
  const KeyGrid grid{2, 4};
  for (int trial = 0; trial < 20; ++trial) {
    const std::string letters = std::string("abcdefg").substr(0, 3 + trial % 5);
    const auto e = cloud(letters, rng);
    const auto l = assign_lp(e, grid);
    l.validate();
    const double cost = assignment_cost(e, l);
    CHECK(cost == Approx(oracle::brute_assignment(squared_costs(e.points, grid.positions()))).epsilon(1e-12));
    CHECK(cost <= assignment_cost(e, binsort_match(e, grid)) + 1e-12);

    // a common rigid motion of letters and keys leaves the argmin alone
    const double th = 0.3 + trial;
    Eigen::Matrix2d R;
    R << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    const Eigen::RowVector2d shift(1.5, -2.0);
    const Points moved_keys = (grid.positions() * R.transpose()).rowwise() + shift;
    const Points moved_letters = (e.points * R.transpose()).rowwise() + shift;
    CHECK(assign_points(moved_letters, moved_keys).cols == assign_points(e.points, grid.positions()).cols);
  }

  Embedding2D on{Alphabet("abc"), Points(3, 2), 0.0};
  on.points << 1, 0, 0, -1, 2, 0;
  const auto exact = assign_lp(on, KeyGrid{2, 3});
  CHECK(exact.keys == std::vector<Cell>{{0, 1}, {1, 0}, {0, 2}});
  CHECK(assignment_cost(on, exact) == 0.0);
}

TEST_CASE("grid normalization matches covariance traces") {
  std::mt19937_64 rng(73);
  const KeyGrid grid{3, 9};
  const auto e = normalize_to_grid(cloud("abcdefghijklmnopqrstuvwxyz", rng), grid);
  const Points keys = grid.positions();
  CHECK(covariance(e.points).trace() == Approx(covariance(keys).trace()).epsilon(1e-12));
  CHECK((e.points.colwise().mean() - keys.colwise().mean()).norm() < 1e-12);
}

TEST_CASE("quadratic assignment brute force") {
  const auto two = make_model(Alphabet("ab"), Eigen::MatrixXd::Constant(2, 2, 0.5));
  const auto l2 = qap_bruteforce(two, KeyGrid{1, 2});
  CHECK(l2.keys == std::vector<Cell>{{0, 0}, {0, 1}});

  Eigen::MatrixXd cycle(3, 3);
  cycle << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const auto l3 = qap_bruteforce(make_model(Alphabet("abc"), cycle), KeyGrid{1, 3});
  CHECK(l3.keys[1] == Cell{0, 1});

  std::mt19937_64 rng(74);
  const auto m = make_model(Alphabet("abcdef"), oracle::random_stochastic(6, rng));
  const KeyGrid grid{2, 4};
  const double best = qap_objective(m, qap_bruteforce(m, grid));
  for (int trial = 0; trial < 50; ++trial) CHECK(best <= qap_objective(m, random_layout(m.alphabet, grid, rng)) + 1e-12);
  CHECK(best <= qap_objective(m, build_h1_layout(m, OptimizerConfig{}, grid).layout) + 1e-12);

  CHECK_THROWS_AS(qap_bruteforce(make_model(Alphabet("abcdefghi"), oracle::random_stochastic(9, rng)), KeyGrid{3, 3}),
                  DataError);
}

TEST_CASE("three-letter pipeline agrees with brute force") {
  Eigen::MatrixXd P(3, 3);
  P << 0.1, 0.8, 0.1, 0.45, 0.1, 0.45, 0.1, 0.8, 0.1;
  const auto m = make_model(Alphabet("abc"), P);
  const KeyGrid grid{1, 3};
  const auto built = build_h1_layout(m, OptimizerConfig{}, grid);
  const auto exact = qap_bruteforce(m, grid);
  CHECK(built.layout.keys[1] == Cell{0, 1});
  CHECK(qap_objective(m, built.layout) == Approx(qap_objective(m, exact)).epsilon(1e-12));
}

TEST_CASE("English layout beats random placements") {
  const auto& m = fixtures::english();
  const KeyGrid grid{3, 9};
  const auto a = build_h1_layout(m, OptimizerConfig{}, grid);
  const auto b = build_h1_layout(m, OptimizerConfig{}, grid);
  a.layout.validate();
  CHECK(a.layout.keys == b.layout.keys);
  const double ours = qap_objective(m, a.layout);
  std::mt19937_64 rng(75);
  int wins = 0;
  for (int trial = 0; trial < 100; ++trial)
    if (ours < qap_objective(m, random_layout(m.alphabet, grid, rng))) ++wins;
  CHECK(wins >= 95);
}

TEST_CASE("merging two sub-layouts") {
  const auto& m = fixtures::english();
  const Partition p = Partition::from_letters(m.alphabet, "abcdefghijklm");
  const auto h2 = build_h2_from_partition(m, OptimizerConfig{}, p, KeyGrid{3, 5}, KeyGrid{3, 5}, 2);
  h2.layout.validate();
  CHECK(h2.layout.grid == KeyGrid{3, 11});
  CHECK(h2.left.layout.alphabet.letters().size() == 13);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const bool left = h2.layout.keys[i].col < 5;
    CHECK(left == (h2.left.layout.alphabet.index(m.alphabet[i]) >= 0));
    CHECK(h2.layout.keys[i].col != 5);
  }
  const std::string left = h2.left.layout.alphabet.letters(), right = h2.right.layout.alphabet.letters();
  CHECK(((left == p.letters_a() && right == p.letters_b()) || (left == p.letters_b() && right == p.letters_a())));

  CHECK_THROWS_WITH_AS(build_h2_from_partition(m, OptimizerConfig{}, p, KeyGrid{3, 4}, KeyGrid{3, 5}),
                       "cluster larger than its grid", DataError);
}

TEST_CASE("single-letter clusters") {
  std::mt19937_64 rng(76);
  const auto m = make_model(Alphabet("abcdef"), oracle::random_stochastic(6, rng));
  const auto h2 = build_h2_from_partition(m, OptimizerConfig{}, Partition::from_letters(m.alphabet, "abcde"),
                                          KeyGrid{3, 2}, KeyGrid{1, 1});
  h2.layout.validate();
  CHECK(h2.layout.keys[5] == Cell{0, 3});
}

TEST_CASE("two-handed English build") {
  const auto& m = fixtures::english();
  const auto h2 = build_h2_layout(m, OptimizerConfig{}, 3);
  h2.layout.validate();
  const auto a = h2.partition.cluster_a().size(), b = h2.partition.cluster_b().size();
  CHECK(h2.left.layout.grid == fit_grid(std::max(a, b)));
  CHECK(h2.right.layout.grid == fit_grid(std::min(a, b)));
}

}
