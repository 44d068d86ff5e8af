#include "keyforge/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace keyforge {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string header(double width, double height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string label(double x, double y, char letter, double size) {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"" + num(size) +
         "\" text-anchor=\"middle\" dominant-baseline=\"central\">" + std::string(1, letter) + "</text>\n";
}

}  // namespace

std::string render_embedding_svg(const Embedding2D& emb) {
  constexpr double size = 480.0, margin = 30.0;
  const auto& p = emb.points;
  const Eigen::RowVector2d lo = p.colwise().minCoeff(), hi = p.colwise().maxCoeff();
  const double span = std::max({hi(0) - lo(0), hi(1) - lo(1), 1e-12});
  const double scale = (size - 2 * margin) / span;

  std::string out = header(size, size);
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    const double x = margin + (p(i, 0) - lo(0)) * scale;
    const double y = size - margin - (p(i, 1) - lo(1)) * scale;
    out += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3\" fill=\"steelblue\"/>\n";
    out += label(x + 9, y - 9, emb.alphabet[static_cast<std::size_t>(i)], 14);
  }
  return out + "</svg>\n";
}

std::string render_layout_svg(const KeyboardLayout& layout, const std::vector<EllipseOverlay>& ellipses) {
  constexpr double key = 48.0, margin = 16.0;
  const double width = layout.grid.cols * key + 2 * margin;
  const double height = layout.grid.rows * key + 2 * margin;
  // grid cell (r, c) has planar position (c, -r); its center maps to the pixel below
  auto px = [&](double x) { return margin + (x + 0.5) * key; };
  auto py = [&](double y) { return margin + (-y + 0.5) * key; };

  std::string out = header(width, height);
  for (std::size_t i = 0; i < layout.keys.size(); ++i) {
    const auto& cell = layout.keys[i];
    out += "<rect x=\"" + num(margin + cell.col * key + 2) + "\" y=\"" + num(margin + cell.row * key + 2) +
           "\" width=\"" + num(key - 4) + "\" height=\"" + num(key - 4) +
           "\" rx=\"6\" fill=\"#f4f4f4\" stroke=\"#333\"/>\n";
    out += label(px(cell.col), py(-cell.row), layout.alphabet[i], 20);
  }
  for (const auto& overlay : ellipses) {
    const auto& e = overlay.ellipse;
    const double degrees = -e.angle * 180.0 / std::numbers::pi;
    out += "<ellipse cx=\"" + num(px(e.center(0))) + "\" cy=\"" + num(py(e.center(1))) + "\" rx=\"" +
           num(e.semi_major * key) + "\" ry=\"" + num(e.semi_minor * key) + "\" transform=\"rotate(" +
           num(degrees) + " " + num(px(e.center(0))) + " " + num(py(e.center(1))) + ")\" fill=\"none\" stroke=\"" +
           overlay.color + "\" stroke-width=\"2\"/>\n";
  }
  return out + "</svg>\n";
}

std::string render_curvature_svg(const CurvatureReport& report) {
  constexpr double bar = 18.0, margin = 30.0, height = 320.0;
  const auto n = static_cast<Eigen::Index>(report.alphabet.size());
  const double width = n * bar + 2 * margin;
  const double top = std::max(report.mean_gauss.maxCoeff(), 0.0);
  const double bottom = std::min(report.mean_gauss.minCoeff(), 0.0);
  const double span = std::max(top - bottom, 1e-12);
  const double scale = (height - 2 * margin) / span;
  const double zero = margin + top * scale;

  std::string out = header(width, height);
  out += "<line x1=\"" + num(margin) + "\" y1=\"" + num(zero) + "\" x2=\"" + num(width - margin) + "\" y2=\"" +
         num(zero) + "\" stroke=\"#333\"/>\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = report.mean_gauss(i);
    const double h = std::abs(v) * scale;
    const double x = margin + i * bar;
    out += "<rect x=\"" + num(x + 2) + "\" y=\"" + num(v >= 0 ? zero - h : zero) + "\" width=\"" + num(bar - 4) +
           "\" height=\"" + num(h) + "\" fill=\"" + (v >= 0 ? "#4a7" : "#c55") + "\"/>\n";
    out += label(x + bar / 2, height - margin / 2, report.alphabet[static_cast<std::size_t>(i)], 12);
  }
  return out + "</svg>\n";
}

}  // namespace keyforge
