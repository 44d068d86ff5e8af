#pragma once

#include <string>
#include <vector>

#include "keyforge/bench.hpp"
#include "keyforge/curvature.hpp"
#include "keyforge/embed.hpp"
#include "keyforge/layout.hpp"

namespace keyforge {

struct EllipseOverlay {
  EllipseSpec ellipse;  // in grid coordinates
  std::string color;
};

/// Scatter plot with letter labels.
std::string render_embedding_svg(const Embedding2D& emb);

/// Keys as labelled squares, with optional ellipses drawn on top.
std::string render_layout_svg(const KeyboardLayout& layout,
                              const std::vector<EllipseOverlay>& ellipses = {});

/// Bar chart of the mean Gauss curvature per letter.
std::string render_curvature_svg(const CurvatureReport& report);

}  // namespace keyforge
