#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <random>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

inline constexpr std::int64_t kDefaultRadius = 1'000'000;

/// Vertices of a regular n-gon rounded to integers, CCW from angle `phase`.
inline std::vector<Point> regular_polygon_points(int n, std::int64_t radius = kDefaultRadius, double phase = 0.0,
                                                 Point center = {0, 0}) {
  require(n >= 3, "polygon needs at least 3 vertices");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * i / n;
    pts.push_back({center.x + std::llround(static_cast<double>(radius) * std::cos(a)),
                   center.y + std::llround(static_cast<double>(radius) * std::sin(a))});
  }
  return pts;
}

inline PointSet regular_polygon(int n, std::int64_t radius = kDefaultRadius) {
  return PointSet(regular_polygon_points(n, radius));
}

inline bool collinear_with_any_pair(const std::vector<Point>& pts, const Point& p) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] == p) return true;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (orientation(pts[i], pts[j], p) == Orientation::Collinear) return true;
  }
  return false;
}

/// Uniform points in [0, range)^2, rejection-sampled for general position.
inline PointSet random_general_position(int n, std::uint64_t seed, std::int64_t range = 10'000) {
  require(n >= 0, "negative point count");
  require(range > 0 && range <= kCoordLimit, "coordinate range out of bounds");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(0, range - 1);
  std::vector<Point> pts;
  int attempts = 0;
  while (static_cast<int>(pts.size()) < n) {
    require(++attempts < 1000 * (n + 1), "could not sample points in general position");
    const Point p{coord(rng), coord(rng)};
    if (!collinear_with_any_pair(pts, p)) pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

/// A regular `ring`-gon of radius `radius` (random phase) plus `inside` points in the disc of
/// radius 0.7 * radius and `outside` points in the annulus between 1.05 and 1.5 times the
/// radius. The ring ids come first, then the inside points, then the outside points.
inline PointSet ring_with_scatter(int ring, int inside, int outside, std::uint64_t seed,
                                  std::int64_t radius = kDefaultRadius) {
  require(ring >= 3 && inside >= 0 && outside >= 0, "bad ring or scatter size");
  require(radius >= 1000 && 2 * radius <= kCoordLimit, "radius out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> pts = regular_polygon_points(ring, radius, 2.0 * std::numbers::pi * unit(rng));
  require(!std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
            std::vector<Point> others;
            for (const Point& q : pts)
              if (!(q == p)) others.push_back(q);
            return collinear_with_any_pair(others, p);
          }),
          "ring is not in general position");
  auto sample = [&](double r_min, double r_max, int count) {
    int attempts = 0;
    for (int placed = 0; placed < count;) {
      require(++attempts < 10000 * (count + 1), "could not sample points in general position");
      const double a = 2.0 * std::numbers::pi * unit(rng);
      const double r = static_cast<double>(radius) * std::sqrt(r_min * r_min + (r_max * r_max - r_min * r_min) * unit(rng));
      const Point p{std::llround(r * std::cos(a)), std::llround(r * std::sin(a))};
      if (collinear_with_any_pair(pts, p)) continue;
      pts.push_back(p);
      ++placed;
    }
  };
  sample(0.0, 0.7, inside);
  sample(1.05, 1.5, outside);
  return PointSet(std::move(pts));
}

/// n - 1 points on a regular polygon plus one point near the centre, all spokes present.
inline Triangulation generate_wheel(int n) {
  require(n >= 4, "a wheel needs at least 4 points");
  auto pts = regular_polygon_points(n - 1);
  pts.push_back({7, 3});
  auto ps = std::make_shared<const PointSet>(std::move(pts));
  EdgeSet edges;
  for (int i = 0; i < n - 1; ++i) {
    edges.insert(Edge(i, (i + 1) % (n - 1)));
    edges.insert(Edge(i, n - 1));
  }
  return Triangulation::from_edges(ps, all_ids(ps->size()), edges);
}

/// Regular n-gon with vertex 0 joined to every other vertex.
inline Triangulation generate_fan(int n) {
  require(n >= 3, "a fan needs at least 3 points");
  auto ps = std::make_shared<const PointSet>(regular_polygon_points(n));
  EdgeSet edges;
  for (int i = 0; i < n; ++i) edges.insert(Edge(i, (i + 1) % n));
  for (int i = 2; i < n - 1; ++i) edges.insert(Edge(0, i));
  return Triangulation::from_edges(ps, all_ids(ps->size()), edges);
}

}  // namespace biplane
