#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "biplane/connectivity.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

/// Vertex ids of the two-cluster construction below.
struct No5ConnLayout {
  int k = 0;
  int x(int i) const { return i - 1; }               // lower chain, 1..2k
  int y(int i) const { return 2 * k + i - 1; }       // upper chain, 1..2k-3
  int bottom(int i) const { return 4 * k - 3 + i; }  // 0..6: left, lowest, right hull points, then 4 inner points
  int size() const { return 4 * k + 4; }
};

namespace detail {

inline std::vector<Point> no5conn_points(int k, std::int64_t drop) {
  constexpr double rx = 1'000'000.0, ry = 400'000.0;
  const int lower = 2 * k;
  auto on_ellipse = [&](double u, bool upper) {
    const double h = ry * std::sqrt(1.0 - u * u);
    return Point{std::llround(rx * u), std::llround(upper ? h : -h)};
  };
  auto lower_u = [&](int j) { return -0.9 + 1.8 * (j - 1) / (lower - 1); };
  std::vector<Point> pts;
  for (int j = 1; j <= lower; ++j) pts.push_back(on_ellipse(lower_u(j), false));
  // y_i sits above the middle of x_{i+1} x_{i+2}
  for (int i = 1; i <= lower - 3; ++i) pts.push_back(on_ellipse((lower_u(i + 1) + lower_u(i + 2)) / 2, true));
  const std::int64_t base = -static_cast<std::int64_t>(ry) - drop;
  // outer three points, then an upward-bending row of four
  const Point cluster[7] = {{-40, 0}, {0, -30}, {40, 0}, {-30, 12}, {-10, 8}, {10, 8}, {30, 12}};
  for (const Point& c : cluster) pts.push_back({c.x, base + c.y});
  return pts;
}

}  // namespace detail

/// Two-cluster 4-connected triangulation on 4k+4 points: a convex top cluster (lower chain
/// x_1..x_2k, upper chain y_1..y_{2k-3}) and a 7-point cluster far enough below that every
/// segment from y_i into the bottom cluster crosses x_{i+1} x_{i+2}. Ids follow No5ConnLayout.
inline Triangulation generate_no5conn_counterexample(int k) {
  require(k >= 2, "construction needs k >= 2");
  require(k <= 64, "construction supports k <= 64");
  const No5ConnLayout at{k};
  const int lower = 2 * k;

  EdgeSet e;
  auto upper = [&](int i) { return i == 0 ? at.x(1) : i == lower - 2 ? at.x(lower) : at.y(i); };
  // top cluster: x_j takes the upper edge between y_{j-2} and y_{j-1} (x_1, x_2k at the ends)
  for (int i = 0; i + 1 <= lower - 2; ++i) e.insert(Edge(upper(i), upper(i + 1)));
  for (int j = 1; j < lower; ++j) e.insert(Edge(at.x(j), at.x(j + 1)));
  for (int j = 2; j < lower; ++j) {
    e.insert(Edge(at.x(j), upper(j - 2)));
    e.insert(Edge(at.x(j), upper(j - 1)));
  }
  // bottom cluster: each inner point takes one lower hull edge
  const int left = at.bottom(0), low = at.bottom(1), right = at.bottom(2);
  const int p[4] = {at.bottom(3), at.bottom(4), at.bottom(5), at.bottom(6)};
  for (Edge f : {Edge(at.x(1), left), Edge(left, low), Edge(low, right), Edge(right, at.x(lower)),
                 Edge(p[0], p[1]), Edge(p[1], p[2]), Edge(p[2], p[3]),
                 Edge(p[0], at.x(1)), Edge(p[0], left), Edge(p[1], left), Edge(p[1], low),
                 Edge(p[2], low), Edge(p[2], right), Edge(p[3], right), Edge(p[3], at.x(lower))})
    e.insert(f);
  // middle strip: the inner row shares out the lower chain in contiguous runs
  const int cut[5] = {1, 2, k, lower - 1, lower};
  for (int r = 0; r < 4; ++r)
    for (int j = cut[r]; j <= cut[r + 1]; ++j) e.insert(Edge(p[r], at.x(j)));

  auto crossings_hold = [&](const std::vector<Point>& pts) {
    for (int i = 1; i <= lower - 3; ++i)
      for (int b = 0; b < 7; ++b)
        if (!segments_properly_cross(pts[static_cast<std::size_t>(at.y(i))], pts[static_cast<std::size_t>(at.bottom(b))],
                                     pts[static_cast<std::size_t>(at.x(i + 1))], pts[static_cast<std::size_t>(at.x(i + 2))]))
          return false;
    return true;
  };
  std::vector<int> hull{at.x(1), at.x(lower), at.bottom(0), at.bottom(1), at.bottom(2)};
  for (int i = 1; i <= lower - 3; ++i) hull.push_back(at.y(i));
  std::sort(hull.begin(), hull.end());
  auto valid = [&](std::int64_t drop) {
    const auto pts = detail::no5conn_points(k, drop);
    if (!crossings_hold(pts)) return false;
    const PointSet ps(pts);
    auto h = convex_hull(ps, all_ids(ps.size()));
    std::sort(h.begin(), h.end());
    return h == hull && is_plane(ps, e);
  };
  std::int64_t drop = 1;
  while (!valid(drop)) {
    drop *= 2;
    ensure(drop < (std::int64_t{1} << 39), "no offset gives a plane construction");
  }
  auto ps = std::make_shared<const PointSet>(detail::no5conn_points(k, drop));

  auto t = Triangulation::from_edges(ps, all_ids(ps->size()), e);
  ensure(cut_structures(t).empty(), "construction has a cut structure");
  ensure(vertex_connectivity(t) == 4, "construction is not exactly 4-connected");
  return t;
}

}  // namespace biplane
