#pragma once

#include <random>
#include <vector>

#include "biplane/generators.hpp"
#include "biplane/triangulation.hpp"

namespace fixtures {

using namespace biplane;

/// Scan triangulation of a random point set, scrambled by random flips.
inline Triangulation random_triangulation(const PointSet& ps, std::uint64_t seed, int flips = 30) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Triangulation t = triangulate(ps);
  for (int i = 0; i < flips; ++i) {
    std::vector<Edge> cand;
    for (const Edge& e : t.edges())
      if (t.is_flippable(e)) cand.push_back(e);
    if (cand.empty()) break;
    t.flip(cand[rng() % cand.size()]);
  }
  return t;
}

inline Triangulation random_triangulation(int n, std::uint64_t seed, std::int64_t range = 1000, int flips = 30) {
  return random_triangulation(random_general_position(n, seed, range), seed, flips);
}

/// Random triangulation of a convex polygon (random flips of a fan).
inline Triangulation random_convex_triangulation(int n, std::uint64_t seed, int flips = 40) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  return random_triangulation(PointSet(regular_polygon_points(n, 100000, phase(rng))), seed, flips);
}

/// Random triangulation of a ring with a few interior points, with every flippable hull
/// chord flipped away so that cut structures are mostly bichords.
inline Triangulation mostly_chordless_triangulation(int ring, int inside, std::uint64_t seed) {
  Triangulation t = random_triangulation(ring_with_scatter(ring, inside, 0, seed, 100000), seed, 5 + static_cast<int>(seed % 40));
  for (int round = 0; round < 64; ++round) {
    bool flipped = false;
    for (const Edge& e : t.edges()) {
      if (t.is_hull_vertex(e.u) && t.is_hull_vertex(e.v) && !t.is_hull_edge(e) && t.is_flippable(e)) {
        t.flip(e);
        flipped = true;
        break;
      }
    }
    if (!flipped) break;
  }
  return t;
}

/// Random plane tree: a random spanning tree of a random triangulation.
inline EdgeSet random_plane_tree(const PointSet& ps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Triangulation t = random_triangulation(ps, seed, 20);
  std::vector<Edge> edges(t.edges().begin(), t.edges().end());
  std::shuffle(edges.begin(), edges.end(), rng);
  std::vector<int> comp(ps.size());
  for (std::size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
    return x;
  };
  EdgeSet tree;
  for (const Edge& e : edges) {
    const int a = find(e.u), b = find(e.v);
    if (a == b) continue;
    comp[static_cast<std::size_t>(a)] = b;
    tree.insert(e);
  }
  return tree;
}

}  // namespace fixtures
