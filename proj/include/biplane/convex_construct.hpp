#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <vector>

#include "biplane/connectivity.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"

namespace biplane {

/// Abstract maximal planar graph stored as consistently oriented triangular faces.
struct EmbeddedTriangulation {
  int n = 0;
  std::vector<std::array<int, 3>> faces;

  EdgeSet edges() const {
    EdgeSet out;
    for (const auto& f : faces)
      for (int i = 0; i < 3; ++i) out.insert(Edge(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>((i + 1) % 3)]));
    return out;
  }

  Graph graph() const { return Graph(n, edges()); }

  /// Index of the face traversing the directed edge a -> b.
  std::size_t face_with(int a, int b) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      for (int k = 0; k < 3; ++k)
        if (faces[i][static_cast<std::size_t>(k)] == a && faces[i][static_cast<std::size_t>((k + 1) % 3)] == b) return i;
    fail(ErrorKind::Precondition, "directed edge not on any face");
  }
};

inline EmbeddedTriangulation octahedron() {
  // 0 and 5 are the poles, 1..4 the equator
  return {6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}, {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}}};
}

/// Removes edge uv and adds a new vertex joined to the four vertices of its two faces.
inline EmbeddedTriangulation vertex_split(const EmbeddedTriangulation& g, const Edge& e) {
  const int u = e.u, v = e.v;
  const std::size_t f1 = g.face_with(u, v);
  const std::size_t f2 = g.face_with(v, u);
  auto third = [&](std::size_t f) {
    for (int w : g.faces[f])
      if (w != u && w != v) return w;
    fail(ErrorKind::Internal, "degenerate face");
  };
  const int a = third(f1);  // face (u, v, a)
  const int b = third(f2);  // face (v, u, b)
  const int x = g.n;
  EmbeddedTriangulation out{g.n + 1, {}};
  for (std::size_t i = 0; i < g.faces.size(); ++i)
    if (i != f1 && i != f2) out.faces.push_back(g.faces[i]);
  out.faces.push_back({u, b, x});
  out.faces.push_back({b, v, x});
  out.faces.push_back({v, a, x});
  out.faces.push_back({a, u, x});
  return out;
}

/// Grows the octahedron to n vertices by vertex splits. Each split takes an edge at the most
/// recently added vertex (lowest other endpoint first), then any edge in id order, keeping
/// the first split whose result is still 4-connected.
inline EmbeddedTriangulation four_connected_planar(int n) {
  require(n >= 6, "a 4-connected planar graph needs at least 6 vertices");
  EmbeddedTriangulation g = octahedron();
  while (g.n < n) {
    const int last = g.n - 1;
    std::vector<Edge> order;
    const EdgeSet all = g.edges();
    for (const Edge& e : all)
      if (e.has(last)) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](const Edge& a, const Edge& b) { return a.other(last) < b.other(last); });
    for (const Edge& e : all)
      if (!e.has(last)) order.push_back(e);
    bool grown = false;
    for (const Edge& e : order) {
      EmbeddedTriangulation next = vertex_split(g, e);
      if (vertex_connectivity(next.graph()) >= 4) {
        g = std::move(next);
        grown = true;
        break;
      }
    }
    ensure(grown, "no 4-connectivity preserving vertex split found");
  }
  return g;
}

/// Hamiltonian cycle by backtracking from vertex 0; empty when none exists.
inline std::vector<int> find_hamiltonian_cycle(const Graph& g) {
  const int n = g.size();
  if (n < 3) return {};
  std::vector<int> path{0};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  std::function<bool()> extend = [&]() -> bool {
    const int last = path.back();
    if (static_cast<int>(path.size()) == n) return g.adjacent(last, 0);
    for (int w : g.neighbors(last)) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      path.push_back(w);
      if (extend()) return true;
      path.pop_back();
      used[static_cast<std::size_t>(w)] = 0;
    }
    return false;
  };
  if (!extend()) return {};
  return path;
}

/// Maps the cycle onto the convex hull of ps in CCW order; the cycle becomes the hull and the
/// remaining edges (chords) are split between the two layers by the crossing-conflict
/// colouring. Returned ids are ids of ps.
inline LayeredGraph realize_hamiltonian_on_convex(const Graph& g, const std::vector<int>& ham, const PointSet& ps) {
  require(is_convex_position(ps), "realization needs points in convex position");
  const int n = g.size();
  require(static_cast<int>(ps.size()) == n && static_cast<int>(ham.size()) == n, "cycle, graph and point set sizes differ");
  const std::vector<int> hull = convex_hull(ps);
  std::vector<int> place(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int v = ham[static_cast<std::size_t>(i)];
    require(v >= 0 && v < n && place[static_cast<std::size_t>(v)] < 0, "cycle is not a permutation");
    place[static_cast<std::size_t>(v)] = hull[static_cast<std::size_t>(i)];
  }
  LayeredGraph out(ps);
  EdgeSet chords;
  for (int i = 0; i < n; ++i) {
    const Edge cyc(ham[static_cast<std::size_t>(i)], ham[static_cast<std::size_t>((i + 1) % n)]);
    require(g.adjacent(cyc.u, cyc.v), "cycle uses a non-edge");
  }
  std::set<Edge> hull_edges;
  for (int i = 0; i < n; ++i) hull_edges.insert(Edge(hull[static_cast<std::size_t>(i)], hull[static_cast<std::size_t>((i + 1) % n)]));
  for (const Edge& e : g.edges()) {
    const Edge placed(place[static_cast<std::size_t>(e.u)], place[static_cast<std::size_t>(e.v)]);
    if (hull_edges.count(placed))
      out.add(placed, kLayer1);
    else
      chords.insert(placed);
  }
  const LayeringResult lr = compute_layering(ps, chords);
  require(lr.layers.has_value(), "chords cannot be split into two plane layers; the graph is not planar or the cycle is wrong");
  for (const auto& [e, layer] : *lr.layers) out.add(e, layer);
  return out;
}

/// The two spanning trees of the explicit 5-connected construction, in hull positions
/// 0..n-1. Each tree is two stars joined by a zig-zag path; the second tree is the mirror
/// image j -> (h + 1 - j) mod n of the first, where h = floor(n / 2).
inline std::pair<EdgeSet, EdgeSet> five_connected_trees(int n) {
  require(n == 12 || n >= 14, "explicit construction needs n = 12 or n >= 14");
  const int h = n / 2;
  const int big_star = n % 2 == 0 ? 3 : 4;  // leaves of the star centred at h
  EdgeSet t1;
  for (int j = 1; j <= 3; ++j) t1.insert(Edge(0, j));
  for (int j = 1; j <= big_star; ++j) t1.insert(Edge(h, h + j));
  // 0 -> 4 -> n-1 -> 5 -> n-2 -> ... -> h-1 -> h+big_star+1 -> h
  std::vector<int> path{0};
  int lo = 4, hi = n - 1;
  while (lo <= h - 1) {
    path.push_back(lo++);
    path.push_back(hi--);
  }
  ensure(hi == h + big_star, "zig-zag chains have unequal length");
  path.push_back(h);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) t1.insert(Edge(path[i], path[i + 1]));
  ensure(static_cast<int>(t1.size()) == n - 1, "first tree is not spanning");
  EdgeSet t2;
  auto mirror = [&](int j) { return ((h + 1 - j) % n + n) % n; };
  for (const Edge& e : t1) t2.insert(Edge(mirror(e.u), mirror(e.v)));
  return {t1, t2};
}

/// Tagged edges of the explicit 5-connected construction placed on a CCW convex polygon
/// given by its vertex ids.
inline std::vector<std::pair<Edge, std::uint8_t>> five_connected_convex_edges(const std::vector<int>& ccw_hull) {
  const int n = static_cast<int>(ccw_hull.size());
  auto at = [&](int j) { return ccw_hull[static_cast<std::size_t>(j)]; };
  const auto [t1, t2] = five_connected_trees(n);
  std::vector<std::pair<Edge, std::uint8_t>> out;
  for (int j = 0; j < n; ++j) out.emplace_back(Edge(at(j), at((j + 1) % n)), kLayer1);
  for (const Edge& e : t1) out.emplace_back(Edge(at(e.u), at(e.v)), kLayer1);
  for (const Edge& e : t2) out.emplace_back(Edge(at(e.u), at(e.v)), kLayer2);
  return out;
}

/// 5-connected biplane graph on points in convex position (n = 12 or n >= 14): layer 1 holds
/// the first tree and the hull edges, layer 2 the mirrored tree.
inline LayeredGraph build_5conn_convex(const PointSet& ps) {
  const int n = static_cast<int>(ps.size());
  require(n >= 3 && is_convex_position(ps), "points must be in convex position");
  if (n == 13)
    fail(ErrorKind::Impossible, "no 5-connected biplane graph exists on 13 points in convex position");
  if (n < 12)
    fail(ErrorKind::Impossible,
         "no 5-connected biplane graph exists on fewer than 12 points in convex position (every 5-connected planar graph has at least 12 vertices)");
  LayeredGraph g(ps);
  for (const auto& [e, mask] : five_connected_convex_edges(convex_hull(ps))) g.add(e, mask);
  return g;
}

/// 4-connected biplane graph on points in convex position (n >= 6).
inline LayeredGraph build_4conn_convex(const PointSet& ps) {
  const int n = static_cast<int>(ps.size());
  require(n >= 3 && is_convex_position(ps), "points must be in convex position");
  if (n < 6)
    fail(ErrorKind::Impossible, "no 4-connected biplane graph exists on fewer than 6 points in convex position (every 4-connected planar graph has at least 6 vertices)");
  if (n == 12 || n >= 14) return build_5conn_convex(ps);
  const EmbeddedTriangulation g = four_connected_planar(n);
  const Graph abstract = g.graph();
  const std::vector<int> ham = find_hamiltonian_cycle(abstract);
  ensure(!ham.empty(), "4-connected planar graph without a Hamiltonian cycle");
  return realize_hamiltonian_on_convex(abstract, ham, ps);
}

}  // namespace biplane
