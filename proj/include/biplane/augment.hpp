#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "biplane/cells.hpp"
#include "biplane/connectivity.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

/// Triangulation induced on the vertices that remain after deleting `gone`.
inline Triangulation remove_vertices(const Triangulation& t, const std::vector<int>& gone) {
  std::vector<int> keep;
  for (int v : t.vertices())
    if (std::find(gone.begin(), gone.end(), v) == gone.end()) keep.push_back(v);
  EdgeSet edges;
  for (const Edge& e : t.edges())
    if (std::find(gone.begin(), gone.end(), e.u) == gone.end() && std::find(gone.begin(), gone.end(), e.v) == gone.end())
      edges.insert(e);
  return Triangulation::from_edges(t.shared_points(), std::move(keep), edges);
}

/// True when p lies on a's side of the bisector of the angle (a, o, b); points on the
/// bisector count as a's side.
inline bool bisector_side(const Point& o, const Point& a, const Point& b, const Point& p) {
  using boost::multiprecision::cpp_int;
  auto big = [](Wide w) {
    cpp_int r = static_cast<std::int64_t>(w >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(w);
    return r;
  };
  auto sq_len = [&](const Point& q) {
    const Wide dx = q.x - o.x, dy = q.y - o.y;
    return big(dx * dx + dy * dy);
  };
  // sign of A / |oa| + B / |ob| equals the sign of A |ob| + B |oa|
  const cpp_int A = big(cross(o, a, p)), B = big(cross(o, b, p));
  const cpp_int la = sq_len(a), lb = sq_len(b);
  int s = 0;
  const int sa = A.sign(), sb = B.sign();
  if (sa == sb || sb == 0) {
    s = sa;
  } else if (sa == 0) {
    s = sb;
  } else {
    const cpp_int lhs = A * A * lb, rhs = B * B * la;
    s = lhs == rhs ? 0 : (lhs > rhs ? sa : sb);
  }
  const int side_a = big(cross(o, b, a)).sign();  // sign for points along ray oa
  return s == 0 || s == side_a;
}

struct FlipPair {
  Triangulation result;
  Edge second;         // the edge flipped after uw (uv' or v'w)
  int gained = -1;     // new neighbour of v created by the second flip
  std::vector<Edge> flipped;
};

/// For consecutive hull vertices u, v, w with triangles (u, v, w) and (u, v', w): flips uw
/// (creating vv') and then uv', or v'w when uv' is not flippable.
inline FlipPair flip_pair_helper(Triangulation t, int u, int v, int w, int v_prime) {
  require(t.vertex_count() >= 5, "the flip pair needs at least 5 points");
  require(t.has_triangle(u, v, w) && t.has_triangle(u, v_prime, w), "triangles (u,v,w) and (u,v',w) must exist");
  const auto& hull = t.hull();
  const std::size_t pv = detail::hull_pos(hull, v);
  require(pv < hull.size(), "v is not a hull vertex");
  const int prev = hull[(pv + hull.size() - 1) % hull.size()], next = hull[(pv + 1) % hull.size()];
  require((prev == u && next == w) || (prev == w && next == u), "u, v, w are not consecutive hull vertices");
  FlipPair out;
  const Edge uw(u, w);
  ensure(t.is_flippable(uw), "edge uw is not flippable");
  t.flip(uw);
  out.flipped.push_back(uw);
  Edge second(u, v_prime);
  if (!t.is_flippable(second)) second = Edge(v_prime, w);
  ensure(t.is_flippable(second), "neither uv' nor v'w is flippable");
  const Edge created = t.flip(second);
  out.flipped.push_back(second);
  out.second = second;
  out.gained = created.u == v ? created.v : created.u;
  out.result = std::move(t);
  return out;
}

struct Augmentation {
  EdgeSet added;
  std::vector<std::string> routes;  // one entry per recursion level, outermost first
};

namespace detail {

inline EdgeSet star_from(const Triangulation& t, int c) {
  EdgeSet out;
  for (int x : t.vertices())
    if (x != c && !t.has_edge(Edge(c, x))) out.insert(Edge(c, x));
  return out;
}

inline bool augmentation_holds(const Triangulation& t, const EdgeSet& added) {
  for (const Edge& e : added)
    if (t.has_edge(e)) return false;
  if (!is_plane(t.points(), added)) return false;
  if (!check_4conn_augmentation(t, added).ok) return false;
  EdgeSet all = t.edges();
  all.insert(added.begin(), added.end());
  return vertex_connectivity(induced_graph(t.vertices(), all)) >= 4;
}

inline EdgeSet minus_edges(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out;
  for (const Edge& e : a)
    if (!b.count(e)) out.insert(e);
  return out;
}

inline std::vector<Edge> non_edges(const Triangulation& t) {
  std::vector<Edge> out;
  const auto& vs = t.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!t.has_edge(Edge(vs[i], vs[j]))) out.emplace_back(vs[i], vs[j]);
  return out;
}

/// Plane subsets of the non-edges with `size` elements, lexicographic; first that works.
inline std::optional<EdgeSet> search_subsets(const Triangulation& t, std::size_t size) {
  const auto cand = non_edges(t);
  EdgeSet cur;
  std::optional<EdgeSet> found;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (found) return;
    if (cur.size() == size) {
      if (augmentation_holds(t, cur)) found = cur;
      return;
    }
    for (std::size_t i = from; i < cand.size() && !found; ++i) {
      if (crosses_any(t.points(), cand[i], cur)) continue;
      cur.insert(cand[i]);
      rec(i + 1);
      cur.erase(cand[i]);
    }
  };
  rec(0);
  return found;
}

/// Completes the plane graph `added` on the vertices of t to a triangulation.
inline Triangulation complete_over(const Triangulation& t, const EdgeSet& added) {
  return complete_triangulation(t.shared_points(), t.vertices(), added);
}

inline EdgeSet augment_rec(const Triangulation& t, std::vector<std::string>& routes);

inline std::string kind_message(TriangulationKind k) {
  return k == TriangulationKind::Fan
             ? "fan: every biplane graph containing a fan has vertex connectivity at most 3"
             : "wheel: adding a plane graph to a wheel leaves vertex connectivity at most 3";
}

/// Three-connected input: star from a vertex outside every 3-cut, otherwise the sector
/// construction around the bichord stars.
inline EdgeSet augment_three_connected(const Triangulation& t, const CutReport& rep, std::vector<std::string>& routes) {
  const PointSet& ps = t.points();
  if (rep.empty()) {
    routes.push_back("already 4-connected");
    return {};
  }
  std::vector<char> in_cut(ps.size(), 0);
  for (const auto& b : rep.bichords) in_cut[static_cast<std::size_t>(b.u)] = in_cut[static_cast<std::size_t>(b.middle)] =
      in_cut[static_cast<std::size_t>(b.w)] = 1;
  for (const auto& s : rep.separating_triangles)
    for (int x : s.v) in_cut[static_cast<std::size_t>(x)] = 1;
  for (int v : t.vertices()) {
    if (!in_cut[static_cast<std::size_t>(v)]) {
      routes.push_back("3-connected: star from free vertex");
      return star_from(t, v);
    }
  }
  ensure(rep.separating_triangles.empty(), "every vertex lies in a 3-cut but a separating triangle exists");

  const auto& hull = t.hull();
  const std::size_t h = hull.size();
  // bichord stars: middle -> hull endpoints sorted by hull position
  std::map<int, std::vector<std::size_t>> stars;
  for (const auto& b : rep.bichords) {
    auto& s = stars[b.middle];
    for (int x : {b.u, b.w}) {
      const std::size_t p = hull_pos(hull, x);
      if (std::find(s.begin(), s.end(), p) == s.end()) s.push_back(p);
    }
  }
  struct Choice {
    Wide area = -1;
    int centre = -1;
    std::vector<int> ring;  // v_1 .. v_k
  } best;
  for (auto& [m, pos] : stars) {
    std::sort(pos.begin(), pos.end());
    const std::size_t k = pos.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t a = pos[i], b = pos[(i + 1) % k];
      // sector from hull[a] CCW to hull[b] holds the hull edge (hull[0], hull[1])
      const std::size_t span = (b + h - a) % h == 0 ? h : (b + h - a) % h;
      if ((h - a) % h >= span) continue;
      std::vector<Point> poly{ps[m]};
      for (std::size_t s = 0; s <= span; ++s) poly.push_back(ps[hull[(a + s) % h]]);
      const Wide area = doubled_area(poly);
      if (area > best.area || (area == best.area && m < best.centre)) {
        best.area = area;
        best.centre = m;
        best.ring.clear();
        for (std::size_t s = 1; s <= k; ++s) best.ring.push_back(hull[pos[(i + s) % k]]);
      }
    }
  }
  ensure(best.centre >= 0, "no bichord sector contains the reference hull edge");
  const int v = best.centre;
  const auto& ring = best.ring;
  const std::size_t k = ring.size();
  ensure(k >= 4, "bichord star has fewer than 4 endpoints");
  const int v2 = ring[1], vk1 = ring[k - 2];
  const std::size_t p2 = hull_pos(hull, v2), pk1 = hull_pos(hull, vk1);
  std::vector<int> candidates;
  for (int x : t.vertices())
    if (x != v && !t.is_hull_vertex(x)) candidates.push_back(x);
  for (int vp : candidates) {
    EdgeSet out;
    for (std::size_t j = 1; j + 1 < k; ++j) out.insert(Edge(vp, ring[j]));
    // hull chain strictly between v_{k-1} and v_2, passing v_k .. v_1
    for (std::size_t s = (pk1 + 1) % h; s != p2; s = (s + 1) % h) {
      const int x = hull[s];
      const int to = bisector_side(ps[vp], ps[v2], ps[vk1], ps[x]) ? v2 : vk1;
      if (!t.has_edge(Edge(to, x))) out.insert(Edge(to, x));
    }
    if (augmentation_holds(t, out)) {
      routes.push_back(vp == candidates.front() ? "3-connected: bichord sectors" : "3-connected: bichord sectors (retried centre)");
      return out;
    }
  }
  fail(ErrorKind::Internal, "bichord sector construction failed for every secondary centre");
}

/// Reinserts v (triangle (u, v, w) on the far side of uw) into the completed recursive
/// layer and performs the two flips.
inline FlipPair reinsert(const Triangulation& t2, int u, int v, int w) {
  const auto apex = t2.apices(Edge(u, w));
  ensure(apex.size() == 1, "uw is not a hull edge of the reduced triangulation");
  EdgeSet edges = t2.edges();
  edges.insert(Edge(u, v));
  edges.insert(Edge(v, w));
  std::vector<int> verts = t2.vertices();
  verts.push_back(v);
  const Triangulation t2p = Triangulation::from_edges(t2.shared_points(), std::move(verts), edges);
  return flip_pair_helper(t2p, u, v, w, apex.front());
}

inline EdgeSet ear_case(const Triangulation& t, std::vector<std::string>& routes) {
  std::vector<std::pair<int, Edge>> ears;
  for (int v : t.vertices()) {
    if (!t.is_hull_vertex(v) || t.degree(v) != 2) continue;
    const auto& nb = t.neighbors(v);
    ears.emplace_back(v, Edge(nb[0], nb[1]));
  }
  std::sort(ears.begin(), ears.end());
  for (const auto& [v, uw] : ears) {
    const Triangulation t1 = remove_vertices(t, {v});
    const auto kind = classify(t1);
    if (kind == TriangulationKind::Fan) continue;
    if (kind == TriangulationKind::Wheel) {
      routes.push_back("ear: remainder is a wheel, star");
      return star_from(t, v);
    }
    routes.push_back("ear");
    const Triangulation t2 = complete_over(t1, augment_rec(t1, routes));
    const FlipPair fp = reinsert(t2, uw.u, v, uw.v);
    const EdgeSet out = minus_edges(fp.result.edges(), t.edges());
    ensure(augmentation_holds(t, out), "ear reinsertion does not give a 4-connected union");
    return out;
  }
  fail(ErrorKind::Internal, "every degree-2 vertex leaves a fan");
}

inline EdgeSet leaf_cell_case(const Triangulation& t, const CellTree& cells, std::vector<std::string>& routes) {
  const PointSet& ps = t.points();
  int leaf = -1;
  std::size_t size = 0;
  for (int c : cells.leaves) {
    const std::size_t s = cells.leaf_all(c).size();
    if (leaf < 0 || s < size) leaf = c, size = s;
  }
  const Edge chord = cells.cells[static_cast<std::size_t>(leaf)].chords.front();
  const std::vector<int> free = cells.leaf_free(leaf);
  int u = chord.u, w = chord.v;

  if (t.vertex_count() == 6) {
    // one interior point on each side of the only chord
    std::vector<int> side_a, side_b;
    for (int x : t.vertices()) {
      if (chord.has(x)) continue;
      (orientation(ps[u], ps[w], ps[x]) == Orientation::CCW ? side_a : side_b).push_back(x);
    }
    ensure(side_a.size() == 2 && side_b.size() == 2, "six-point leaf case is not two against two");
    for (int swap = 0; swap < 2; ++swap) {
      const EdgeSet out{Edge(side_a[0], side_b[static_cast<std::size_t>(swap)]),
                        Edge(side_a[1], side_b[static_cast<std::size_t>(1 - swap)])};
      if (augmentation_holds(t, out)) {
        routes.push_back("leaf cell: six points");
        return out;
      }
    }
    fail(ErrorKind::Internal, "no cross matching augments the six-point leaf case");
  }

  const Triangulation t1 = remove_vertices(t, free);
  const auto kind = classify(t1);
  ensure(kind != TriangulationKind::Fan, "removing a minimal leaf cell left a fan");
  if (kind == TriangulationKind::Wheel) {
    int c = -1;
    for (int x : t1.vertices())
      if (!t1.is_hull_vertex(x)) c = x;
    auto cw = t1.neighbors_ccw(c);
    std::reverse(cw.begin(), cw.end());
    auto rotate_to = [&](int x) { std::rotate(cw.begin(), std::find(cw.begin(), cw.end(), x), cw.end()); };
    rotate_to(w);
    if (cw[1] == u) {
      std::swap(u, w);
      rotate_to(w);
    }
    ensure(cw.back() == u, "wheel neighbours are not w, v_1 .. v_k, u");
    const std::vector<int> ring(cw.begin() + 1, cw.end() - 1);
    const int v1 = ring.front();
    const int side = orient_sign(ps[v1], ps[u], ps[free.front()]);
    int up = free.front();
    for (int p : free)
      if (orient_sign(ps[v1], ps[up], ps[p]) != side) up = p;
    EdgeSet out;
    for (int x : ring) out.insert(Edge(up, x));
    for (int p : free) out.insert(Edge(v1, p));
    ensure(augmentation_holds(t, out), "wheel rotation does not give a 4-connected union");
    routes.push_back("leaf cell: remainder is a wheel");
    return out;
  }

  routes.push_back("leaf cell");
  const Triangulation t2 = complete_over(t1, augment_rec(t1, routes));
  const auto cell_apex = t.apices(chord);
  int v = -1;
  for (int a : cell_apex)
    if (std::find(free.begin(), free.end(), a) != free.end()) v = a;
  ensure(v >= 0 && !t.is_hull_vertex(v), "leaf cell apex at the chord is not interior");
  const FlipPair fp = reinsert(t2, u, v, w);
  const int vp = fp.second.u == u || fp.second.u == w ? fp.second.v : fp.second.u;
  const int g = fp.gained;
  EdgeSet built = t2.edges();
  built.erase(Edge(u, w));
  built.erase(fp.second);
  built.insert(Edge(g, v));
  built.insert(Edge(vp, v));
  for (int p : free) {
    if (p == v) continue;
    built.insert(Edge(bisector_side(ps[v], ps[g], ps[vp], ps[p]) ? g : vp, p));
  }
  const EdgeSet out = minus_edges(built, t.edges());
  ensure(augmentation_holds(t, out), "leaf cell reinsertion does not give a 4-connected union");
  return out;
}

inline EdgeSet augment_rec(const Triangulation& t, std::vector<std::string>& routes) {
  const int n = t.vertex_count();
  const bool convex = static_cast<int>(t.hull().size()) == n;
  if (n < 5 || (convex && n < 6)) {
    if (n >= 4) {
      const auto kind = classify(t);
      if (kind != TriangulationKind::Other) fail(ErrorKind::Impossible, kind_message(kind));
    }
    fail(ErrorKind::Impossible, "too few points: need 6 in convex position or 5 otherwise");
  }
  const auto kind = classify(t);
  if (kind != TriangulationKind::Other) fail(ErrorKind::Impossible, kind_message(kind));
  const CutReport rep = cut_structures(t);
  if (rep.chords.empty()) return augment_three_connected(t, rep, routes);

  if (n == 5) {
    routes.push_back("five points: complete graph");
    const auto ne = non_edges(t);
    EdgeSet out(ne.begin(), ne.end());
    ensure(augmentation_holds(t, out), "five-point base case is not K5");
    return out;
  }
  if (convex && n == 6) {
    auto found = search_subsets(t, 3);
    ensure(found.has_value(), "no three plane edges augment the convex hexagon");
    routes.push_back("convex hexagon");
    return *found;
  }
  const CellTree cells = build_cell_tree(t);
  for (int c : cells.leaves)
    if (cells.leaf_all(c).size() == 3) return ear_case(t, routes);
  return leaf_cell_case(t, cells, routes);
}

}  // namespace detail

/// Plane edge set E' with E' disjoint from the triangulation's edges and the union
/// 4-connected, with the route taken at each recursion level.
inline Augmentation augment_to_4conn_traced(const Triangulation& t) {
  Augmentation a;
  a.added = detail::augment_rec(t, a.routes);
  ensure(detail::augmentation_holds(t, a.added), "augmentation result fails verification");
  return a;
}

inline EdgeSet augment_to_4conn(const Triangulation& t) { return augment_to_4conn_traced(t).added; }

}  // namespace biplane
