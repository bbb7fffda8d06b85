#pragma once

// Static SVG drawings: the cells of a 2-dimensional torus decomposition and
// the CM / depth diagram of a triple Segre product.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "conicdiv/conic_cells.hpp"
#include "conicdiv/errors.hpp"
#include "conicdiv/presets.hpp"
#include "conicdiv/segre_depth.hpp"

namespace conicdiv {

namespace detail {

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                 "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  return colors[i % 10];
}

struct Pt {
  double x, y;
};

// Counter-clockwise order around the centroid.
inline std::vector<Pt> ccw(std::vector<Pt> pts) {
  double cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Pt& a, const Pt& b) {
    return std::atan2(a.y - cy, a.x - cx) < std::atan2(b.y - cy, b.x - cx);
  });
  return pts;
}

inline std::string points_attr(const std::vector<Pt>& pts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << pts[i].x << "," << pts[i].y;
  return os.str();
}

// Convex hull of integer points (Andrew's monotone chain), counter-clockwise.
inline std::vector<std::pair<std::int64_t, std::int64_t>> hull2d(std::vector<std::pair<std::int64_t, std::int64_t>> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  auto cross = [](auto o, auto a, auto b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// The unit square cut into the pieces of a 2-dimensional conic table, each
/// piece filled with the color of its class.
inline std::string render_cells(const ConicTable& table) {
  if (table.rows.empty() || table.rows.front().pieces.empty() || table.rows.front().pieces.front().dim() != 2)
    throw InputError("cell rendering needs a 2-dimensional cone");
  const double size = 400, margin = 40;
  auto map = [&](const RatVector& v) {
    return detail::Pt{margin + v[0].get_d() * size, margin + (1.0 - v[1].get_d()) * size};
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin + 200 << "\" height=\""
     << size + 2 * margin << "\">\n";
  for (std::size_t c = 0; c < table.rows.size(); ++c) {
    const auto& row = table.rows[c];
    for (const auto& piece : row.pieces) {
      std::vector<detail::Pt> pts;
      for (const auto& v : piece.vertices()) pts.push_back(map(v));
      os << "  <polygon class=\"cell\" data-class=\"" << row.label.to_string() << "\" fill=\"" << detail::palette(c)
         << "\" stroke=\"black\" stroke-width=\"1\" points=\"" << detail::points_attr(detail::ccw(pts)) << "\"/>\n";
    }
    const double ly = margin + 20.0 * static_cast<double>(c);
    os << "  <rect x=\"" << size + 2 * margin << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" fill=\""
       << detail::palette(c) << "\"/>\n";
    os << "  <text x=\"" << size + 2 * margin + 20 << "\" y=\"" << ly + 12 << "\" font-size=\"12\">"
       << row.label.to_string() << " vol " << to_fraction_string(row.volume) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// Dots for the classes (x, y) = (s_2 - s_1, s_3 - s_1) of a triple Segre
/// product of polynomial rings: CM classes large and colored by depth,
/// others small and gray, with the hull of the conic classes drawn on top.
inline std::string render_segre(std::span<const int> dims, std::int64_t lo, std::int64_t hi) {
  if (dims.size() != 3) throw InputError("Segre rendering needs exactly three factors");
  const auto points = segre_window(dims, lo, hi);
  const SegreMonoid sm = segre_monoid(dims);
  std::vector<std::pair<std::int64_t, std::int64_t>> conic;
  for (const auto& p : points) {
    const std::int64_t shifts[] = {0, p.differences[0], p.differences[1]};
    const IntVector u = segre_divisor(sm, shifts);
    if (is_conic(sm.cone, u).conic) conic.emplace_back(p.differences[0], p.differences[1]);
  }
  const double step = 30, margin = 30;
  const double extent = static_cast<double>(hi - lo) * step;
  auto map = [&](std::int64_t x, std::int64_t y) {
    return detail::Pt{margin + static_cast<double>(x - lo) * step, margin + extent - static_cast<double>(y - lo) * step};
  };
  std::map<int, const char*> depth_color;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << extent + 2 * margin + 120 << "\" height=\""
     << extent + 2 * margin << "\">\n";
  const auto o = map(0, 0);
  os << "  <line x1=\"" << margin << "\" y1=\"" << o.y << "\" x2=\"" << margin + extent << "\" y2=\"" << o.y
     << "\" stroke=\"#999\"/>\n";
  os << "  <line x1=\"" << o.x << "\" y1=\"" << margin << "\" x2=\"" << o.x << "\" y2=\"" << margin + extent
     << "\" stroke=\"#999\"/>\n";
  for (const auto& p : points) {
    const auto q = map(p.differences[0], p.differences[1]);
    if (!depth_color.count(p.depth)) depth_color[p.depth] = detail::palette(depth_color.size());
    os << "  <circle class=\"" << (p.cm ? "cm" : "non-cm") << "\" data-x=\"" << p.differences[0] << "\" data-y=\""
       << p.differences[1] << "\" data-depth=\"" << p.depth << "\" cx=\"" << q.x << "\" cy=\"" << q.y << "\" r=\""
       << (p.cm ? 6 : 3) << "\" fill=\"" << (p.cm ? depth_color[p.depth] : "#cccccc") << "\"/>\n";
  }
  std::vector<detail::Pt> hull;
  for (const auto& [x, y] : detail::hull2d(conic)) hull.push_back(map(x, y));
  os << "  <polygon class=\"conic-hull\" fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\""
     << detail::points_attr(hull) << "\"/>\n";
  double ly = margin;
  for (const auto& [d, color] : depth_color) {
    os << "  <circle cx=\"" << extent + 2 * margin + 10 << "\" cy=\"" << ly << "\" r=\"6\" fill=\"" << color
       << "\"/>\n";
    os << "  <text x=\"" << extent + 2 * margin + 22 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">depth " << d
       << "</text>\n";
    ly += 20;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace conicdiv
