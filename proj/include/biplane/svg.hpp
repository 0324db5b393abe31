#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "biplane/graph.hpp"

namespace biplane {

struct SvgStyle {
  double size = 1000.0;
  double margin = 0.05;  // fraction of size on every side
  double point_radius = 6.0;
  bool labels = false;
};

/// Drawing of a layered graph: layer 1 solid, layer 2 dashed, edges in both layers thick.
/// Coordinates are scaled uniformly into the square viewBox with y pointing up.
inline std::string render_svg(const LayeredGraph& g, const SvgStyle& style = {}) {
  const auto& pts = g.points().points();
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!pts.empty()) {
    min_x = max_x = static_cast<double>(pts[0].x);
    min_y = max_y = static_cast<double>(pts[0].y);
    for (const Point& p : pts) {
      min_x = std::min(min_x, static_cast<double>(p.x));
      max_x = std::max(max_x, static_cast<double>(p.x));
      min_y = std::min(min_y, static_cast<double>(p.y));
      max_y = std::max(max_y, static_cast<double>(p.y));
    }
  }
  const double inner = style.size * (1.0 - 2.0 * style.margin);
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double scale = inner / span;
  const double off_x = style.size * style.margin + (inner - (max_x - min_x) * scale) / 2.0;
  const double off_y = style.size * style.margin + (inner - (max_y - min_y) * scale) / 2.0;
  auto sx = [&](const Point& p) { return off_x + (static_cast<double>(p.x) - min_x) * scale; };
  auto sy = [&](const Point& p) { return style.size - off_y - (static_cast<double>(p.y) - min_y) * scale; };

  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  const long side = std::lround(style.size);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << side << ' ' << side << "\" width=\"" << side
      << "\" height=\"" << side << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& [e, mask] : g.tagged_edges()) {
    const Point &a = g.points()[e.u], &b = g.points()[e.v];
    out << "<line x1=\"" << sx(a) << "\" y1=\"" << sy(a) << "\" x2=\"" << sx(b) << "\" y2=\"" << sy(b) << '"';
    if (mask == kBothLayers)
      out << " stroke=\"black\" stroke-width=\"4\"";
    else if (mask == kLayer2)
      out << " stroke=\"#c0392b\" stroke-width=\"2\" stroke-dasharray=\"8 6\"";
    else
      out << " stroke=\"black\" stroke-width=\"2\"";
    out << " class=\"layer" << int{mask} << "\"/>\n";
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out << "<circle cx=\"" << sx(pts[i]) << "\" cy=\"" << sy(pts[i]) << "\" r=\"" << style.point_radius << "\" fill=\"#2c3e50\"/>\n";
    if (style.labels)
      out << "<text x=\"" << sx(pts[i]) + style.point_radius << "\" y=\"" << sy(pts[i]) - style.point_radius
          << "\" font-size=\"14\" font-family=\"sans-serif\">" << i << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace biplane
