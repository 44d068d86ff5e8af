#include "keyforge/bench.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "keyforge/error.hpp"

namespace keyforge {
namespace {

std::vector<int> encode(const Alphabet& alphabet, std::string_view text) {
  if (text.size() < 2) throw DataError("benchmark text needs at least two letters");
  std::vector<int> out;
  out.reserve(text.size());
  for (char ch : text) out.push_back(alphabet.require_index(ch));
  return out;
}

BenchReport finish(std::string id, std::size_t letters, double total) {
  return {std::move(id), letters, total, total / static_cast<double>(letters - 1)};
}

Points unit_trace(const Points& p) {
  Points out = p.rowwise() - p.colwise().mean();
  const double trace = covariance(p).trace();
  if (!(trace > 0.0)) throw DataError("layout has zero spread");
  return out / std::sqrt(trace);
}

}  // namespace

Comparison compare(const BenchReport& ours, const BenchReport& baseline) {
  if (!(baseline.per_transition > 0.0)) throw DataError("baseline has zero cost");
  const double ratio = ours.per_transition / baseline.per_transition;
  return {ratio, 100.0 * (1.0 - ratio)};
}

QwertyReference qwerty_reference(int hands) {
  if (hands != 1 && hands != 2) throw DataError("hands must be 1 or 2");
  static constexpr std::array<std::string_view, 3> rows = {"qwertyuiop", "asdfghjkl", "zxcvbnm"};
  const Alphabet alphabet;
  KeyboardLayout layout{alphabet, {3, 10}, std::vector<Cell>(alphabet.size())};
  for (int r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      layout.keys[alphabet.require_index(rows[r][c])] = {r, static_cast<int>(c)};
  QwertyReference ref{std::move(layout), std::nullopt};
  if (hands == 2) ref.partition = Partition::from_letters(alphabet, "qwertasdfgzxcvb");
  return ref;
}

BenchReport simulate_h1(const KeyboardLayout& layout, std::string_view text, std::string layout_id) {
  layout.validate();
  const auto seq = encode(layout.alphabet, text);
  const Points pos = layout.positions();
  double total = 0.0;
  for (std::size_t t = 1; t < seq.size(); ++t) total += (pos.row(seq[t]) - pos.row(seq[t - 1])).norm();
  return finish(std::move(layout_id), seq.size(), total);
}

BenchReport simulate_h2(const KeyboardLayout& layout, const Partition& partition,
                        std::string_view text, std::string layout_id) {
  layout.validate();
  if (!(partition.alphabet() == layout.alphabet)) throw DataError("partition alphabet does not match the layout");
  const auto seq = encode(layout.alphabet, text);
  const Points pos = layout.positions();

  std::array<int, 2> last = {-1, -1};
  std::array<double, 2> slack = {0.0, 0.0};
  double total = 0.0;
  for (int letter : seq) {
    const int h = partition.in_a(letter) ? 0 : 1;
    double move = 0.0;
    if (last[h] >= 0) {
      move = (pos.row(letter) - pos.row(last[h])).norm();
      total += std::max(0.0, move - slack[h]);
    }
    slack[h] = 0.0;
    slack[1 - h] += move;
    last[h] = letter;
  }
  return finish(std::move(layout_id), seq.size(), total);
}

EllipseSpec covariance_ellipse(const Points& points, const Eigen::VectorXd& pi) {
  if (points.rows() != pi.size()) throw DataError("weights do not match the points");
  if (points.rows() < 2) throw DataError("ellipse needs at least two points");
  if ((pi.array() < 0.0).any() || !(pi.sum() > 0.0)) throw DataError("invalid weights");

  EllipseSpec e;
  e.center = weighted_centroid(points, pi);
  const Eigen::Matrix2d sigma = weighted_covariance(points, pi);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(sigma);
  const Eigen::Vector2d values = eig.eigenvalues();  // ascending
  if (!(values(0) > 1e-12 * std::max(1.0, values(1)))) throw DataError("degenerate ellipse");

  e.semi_major = std::sqrt(values(1));
  e.semi_minor = std::sqrt(values(0));
  const Eigen::Vector2d v = eig.eigenvectors().col(1);
  double angle = std::atan2(v.y(), v.x());
  if (angle <= -std::numbers::pi / 2) angle += std::numbers::pi;
  if (angle > std::numbers::pi / 2) angle -= std::numbers::pi;
  e.angle = angle;
  e.area = std::numbers::pi * e.semi_major * e.semi_minor;
  return e;
}

double keyboard_distortion(const KeyboardLayout& x, const KeyboardLayout& y,
                           const std::optional<Eigen::VectorXd>& weights) {
  if (!(x.alphabet == y.alphabet)) throw DataError("layouts use different alphabets");
  x.validate();
  y.validate();
  const auto n = static_cast<Eigen::Index>(x.alphabet.size());
  if (weights && weights->size() != n) throw DataError("weights do not match the alphabet");
  const Eigen::MatrixXd dx = pairwise_distances(unit_trace(x.positions()));
  const Eigen::MatrixXd dy = pairwise_distances(unit_trace(y.positions()));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double gap = std::abs(dx(i, j) - dy(i, j));
      if (weights) gap *= (*weights)(i) * (*weights)(j);
      worst = std::max(worst, gap);
    }
  return worst;
}

}  // namespace keyforge
