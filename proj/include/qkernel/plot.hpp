#pragma once

// Static SVG of a trained 2-feature classifier: the decision function sampled
// on a regular grid, its zero level traced by marching squares, and the
// points coloured by true label with marker shape by predicted label.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qkernel/error.hpp"
#include "qkernel/quantum_kernel.hpp"

namespace qkernel {

struct PlotBounds {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
};

/// Decision values on a resolution x resolution lattice covering `bounds`,
/// row-major with row 0 at ymin.
struct DecisionGrid {
  PlotBounds bounds;
  std::size_t resolution = 100;
  std::vector<double> values;

  double x_at(std::size_t i) const {
    return bounds.xmin + (bounds.xmax - bounds.xmin) * static_cast<double>(i) / static_cast<double>(resolution - 1);
  }
  double y_at(std::size_t j) const {
    return bounds.ymin + (bounds.ymax - bounds.ymin) * static_cast<double>(j) / static_cast<double>(resolution - 1);
  }
  double at(std::size_t i, std::size_t j) const { return values[j * resolution + i]; }
};

/// Bounding box of the points padded by `pad` of each side's extent.
inline PlotBounds bounds_of(const Points& pts, double pad = 0.05) {
  if (pts.empty() || pts.front().size() != 2) {
    throw Error(ErrorKind::dimension, "plotting needs non-empty 2-feature data");
  }
  PlotBounds b{pts[0][0], pts[0][0], pts[0][1], pts[0][1]};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p[0]);
    b.xmax = std::max(b.xmax, p[0]);
    b.ymin = std::min(b.ymin, p[1]);
    b.ymax = std::max(b.ymax, p[1]);
  }
  const double dx = std::max(b.xmax - b.xmin, 1e-9) * pad;
  const double dy = std::max(b.ymax - b.ymin, 1e-9) * pad;
  return {b.xmin - dx, b.xmax + dx, b.ymin - dy, b.ymax + dy};
}

/// Evaluates `decision` (a batch function over points) on the lattice.
inline DecisionGrid evaluate_grid(const PlotBounds& bounds, std::size_t resolution,
                                  const std::function<std::vector<double>(const Points&)>& decision) {
  if (resolution < 2) throw Error(ErrorKind::argument, "grid resolution must be at least 2");
  DecisionGrid g{bounds, resolution, {}};
  Points lattice;
  lattice.reserve(resolution * resolution);
  for (std::size_t j = 0; j < resolution; ++j)
    for (std::size_t i = 0; i < resolution; ++i) lattice.push_back({g.x_at(i), g.y_at(j)});
  g.values = decision(lattice);
  if (g.values.size() != lattice.size()) {
    throw Error(ErrorKind::dimension, "decision function returned the wrong number of values");
  }
  return g;
}

struct Segment {
  double x0, y0, x1, y1;
};

/// Zero-crossing segments of the grid (marching squares, saddle cells split
/// by the cell-centre average).
inline std::vector<Segment> zero_contour(const DecisionGrid& g) {
  std::vector<Segment> out;
  const auto lerp = [](double a, double b, double fa, double fb) { return a + (b - a) * fa / (fa - fb); };
  for (std::size_t j = 0; j + 1 < g.resolution; ++j) {
    for (std::size_t i = 0; i + 1 < g.resolution; ++i) {
      const double x0 = g.x_at(i), x1 = g.x_at(i + 1), y0 = g.y_at(j), y1 = g.y_at(j + 1);
      const double f00 = g.at(i, j), f10 = g.at(i + 1, j), f11 = g.at(i + 1, j + 1), f01 = g.at(i, j + 1);
      struct P {
        double x, y;
      };
      std::vector<P> hits;  // crossings on edges bottom, right, top, left
      if ((f00 >= 0) != (f10 >= 0)) hits.push_back({lerp(x0, x1, f00, f10), y0});
      if ((f10 >= 0) != (f11 >= 0)) hits.push_back({x1, lerp(y0, y1, f10, f11)});
      if ((f01 >= 0) != (f11 >= 0)) hits.push_back({lerp(x0, x1, f01, f11), y1});
      if ((f00 >= 0) != (f01 >= 0)) hits.push_back({x0, lerp(y0, y1, f00, f01)});
      if (hits.size() == 2) {
        out.push_back({hits[0].x, hits[0].y, hits[1].x, hits[1].y});
      } else if (hits.size() == 4) {
        const bool centre_pos = (f00 + f10 + f11 + f01) >= 0;
        if (centre_pos == (f00 >= 0)) {
          out.push_back({hits[0].x, hits[0].y, hits[1].x, hits[1].y});
          out.push_back({hits[2].x, hits[2].y, hits[3].x, hits[3].y});
        } else {
          out.push_back({hits[0].x, hits[0].y, hits[3].x, hits[3].y});
          out.push_back({hits[1].x, hits[1].y, hits[2].x, hits[2].y});
        }
      }
    }
  }
  return out;
}

inline constexpr const char* kPositiveColor = "#d62728";
inline constexpr const char* kNegativeColor = "#1f77b4";

/// Renders the plot. Points carry class="point"; fill encodes the true label
/// and the marker (circle / square) the predicted label.
inline std::string render_decision_svg(const DecisionGrid& grid, const Points& points,
                                       std::span<const int> true_labels,
                                       std::span<const int> predicted, const std::string& title) {
  if (points.size() != true_labels.size() || points.size() != predicted.size()) {
    throw Error(ErrorKind::dimension, "plot points and labels differ in length");
  }
  constexpr double size = 480.0, margin = 40.0;
  const auto& b = grid.bounds;
  const auto sx = [&](double x) { return margin + (x - b.xmin) / (b.xmax - b.xmin) * size; };
  const auto sy = [&](double y) { return margin + size - (y - b.ymin) / (b.ymax - b.ymin) * size; };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  const double total = size + 2 * margin;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(total) << "\" height=\"" << num(total)
      << "\" viewBox=\"0 0 " << num(total) << ' ' << num(total) << "\">\n";
  svg << "<title>" << title << "</title>\n";
  svg << "<rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\"" << num(size)
      << "\" height=\"" << num(size) << "\" fill=\"#ffffff\" stroke=\"#333333\"/>\n";

  // Coarse region shading: one translucent cell per 10x10 block of the grid.
  const std::size_t block = std::max<std::size_t>(1, grid.resolution / 10);
  svg << "<g class=\"regions\" opacity=\"0.12\">\n";
  for (std::size_t j = 0; j + 1 < grid.resolution; j += block) {
    for (std::size_t i = 0; i + 1 < grid.resolution; i += block) {
      const std::size_t i1 = std::min(i + block, grid.resolution - 1);
      const std::size_t j1 = std::min(j + block, grid.resolution - 1);
      const double centre = grid.at((i + i1) / 2, (j + j1) / 2);
      svg << "<rect x=\"" << num(sx(grid.x_at(i))) << "\" y=\"" << num(sy(grid.y_at(j1))) << "\" width=\""
          << num(sx(grid.x_at(i1)) - sx(grid.x_at(i))) << "\" height=\""
          << num(sy(grid.y_at(j)) - sy(grid.y_at(j1))) << "\" fill=\""
          << (centre >= 0 ? kPositiveColor : kNegativeColor) << "\"/>\n";
    }
  }
  svg << "</g>\n";

  svg << "<g class=\"boundary\" stroke=\"#000000\" stroke-width=\"1.5\">\n";
  for (const auto& s : zero_contour(grid)) {
    svg << "<line x1=\"" << num(sx(s.x0)) << "\" y1=\"" << num(sy(s.y0)) << "\" x2=\"" << num(sx(s.x1))
        << "\" y2=\"" << num(sy(s.y1)) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"points\" stroke=\"#000000\" stroke-width=\"0.8\">\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const char* fill = true_labels[k] > 0 ? kPositiveColor : kNegativeColor;
    const double px = sx(points[k][0]);
    const double py = sy(points[k][1]);
    if (predicted[k] > 0) {
      svg << "<circle class=\"point\" cx=\"" << num(px) << "\" cy=\"" << num(py) << "\" r=\"5\" fill=\"" << fill
          << "\"/>\n";
    } else {
      svg << "<rect class=\"point\" x=\"" << num(px - 4.5) << "\" y=\"" << num(py - 4.5)
          << "\" width=\"9\" height=\"9\" fill=\"" << fill << "\"/>\n";
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace qkernel
