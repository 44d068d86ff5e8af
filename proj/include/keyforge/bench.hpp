#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "keyforge/geometry.hpp"
#include "keyforge/layout.hpp"
#include "keyforge/partition.hpp"

namespace keyforge {

struct BenchReport {
  std::string layout_id;
  std::size_t letters = 0;
  double total = 0.0;           // a.u.
  double per_transition = 0.0;  // total / (letters - 1)
};

struct Comparison {
  double ratio = 0.0;                // ours / baseline, per transition
  double percent_improvement = 0.0;  // 100 (baseline - ours) / baseline
};

Comparison compare(const BenchReport& ours, const BenchReport& baseline);

struct QwertyReference {
  KeyboardLayout layout;
  std::optional<Partition> partition;  // hands == 2 only
};

/// QWERTY rows qwertyuiop / asdfghjkl / zxcvbnm, left-aligned on a 3×10
/// grid. For two hands the left cluster is every letter above or left of b.
QwertyReference qwerty_reference(int hands);

/// Hand travel over consecutive letters of an already normalized text.
BenchReport simulate_h1(const KeyboardLayout& layout, std::string_view text,
                        std::string layout_id = "layout");

/// Two hands with waiting: a move costs max(0, distance - slack), where slack
/// is the distance the other hand moved since this hand's last keystroke.
BenchReport simulate_h2(const KeyboardLayout& layout, const Partition& partition,
                        std::string_view text, std::string layout_id = "layout");

struct EllipseSpec {
  Eigen::RowVector2d center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double angle = 0.0;  // radians, in (-π/2, π/2]
  double area = 0.0;
};

/// π-weighted covariance ellipse (x-μ)ᵀ Σ⁻¹ (x-μ) = 1.
EllipseSpec covariance_ellipse(const Points& points, const Eigen::VectorXd& pi);

/// max over letter pairs of |d_X - d_Y| (optionally times π_x π_x') after
/// scaling both layouts to unit covariance trace.
double keyboard_distortion(const KeyboardLayout& x, const KeyboardLayout& y,
                           const std::optional<Eigen::VectorXd>& weights = std::nullopt);

}  // namespace keyforge
