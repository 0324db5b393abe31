#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "biplane/connectivity.hpp"
#include "biplane/convex_construct.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

/// One completed insertion, as recorded in InsertionState::steps.
struct InsertionStep {
  std::string phase;          // "interior", "boundary" or "exterior"
  std::vector<int> vertices;  // inserted ids
  std::string route;          // which case of the construction produced the edges
  int added = 0;
  int deleted = 0;
};

/// A biplane graph on the active subset of a point set. Only real edges are stored; the
/// triangulation completions used inside a step are rebuilt from these each time.
struct InsertionState {
  std::shared_ptr<const PointSet> points;
  std::vector<int> active;  // sorted
  LayeredGraph graph;
  std::vector<InsertionStep> steps;

  InsertionState(std::shared_ptr<const PointSet> ps, std::vector<int> ids, LayeredGraph g)
      : points(std::move(ps)), active(std::move(ids)), graph(std::move(g)) {
    std::sort(active.begin(), active.end());
  }

  bool is_active(int v) const { return std::binary_search(active.begin(), active.end(), v); }

  void activate(int v) { active.insert(std::lower_bound(active.begin(), active.end(), v), v); }

  /// Union graph on the active vertices, relabelled 0..k-1 in id order.
  Graph active_graph() const {
    std::vector<int> index(points->size(), -1);
    for (std::size_t i = 0; i < active.size(); ++i) index[static_cast<std::size_t>(active[i])] = static_cast<int>(i);
    Graph g(static_cast<int>(active.size()));
    for (const auto& [e, m] : graph.tagged_edges()) {
      ensure(index[static_cast<std::size_t>(e.u)] >= 0 && index[static_cast<std::size_t>(e.v)] >= 0, "edge at inactive vertex");
      g.add_edge(index[static_cast<std::size_t>(e.u)], index[static_cast<std::size_t>(e.v)]);
    }
    return g;
  }

  int connectivity() const { return vertex_connectivity(active_graph()); }
};

namespace detail {

/// Edges of the given layer with both endpoints in `ids` (sorted).
inline EdgeSet layer_within(const LayeredGraph& g, int layer, const std::vector<int>& ids) {
  EdgeSet out;
  for (const Edge& e : g.layer(layer))
    if (std::binary_search(ids.begin(), ids.end(), e.u) && std::binary_search(ids.begin(), ids.end(), e.v)) out.insert(e);
  return out;
}

struct Merge {
  LayeredGraph graph;
  std::vector<Edge> deleted;
  int added = 0;
};

/// New real edge set: old real edges that survive in either final layer plus every final
/// edge at a fresh vertex. Layer tags follow final-layer membership.
inline Merge merge_layers(const LayeredGraph& real, const EdgeSet& l1, const EdgeSet& l2, const std::vector<int>& fresh) {
  Merge m{LayeredGraph(real.points()), {}, 0};
  auto is_fresh = [&](const Edge& e) {
    return std::find(fresh.begin(), fresh.end(), e.u) != fresh.end() || std::find(fresh.begin(), fresh.end(), e.v) != fresh.end();
  };
  for (const auto& [e, mask] : real.tagged_edges()) {
    std::uint8_t nm = 0;
    if (l1.count(e)) nm |= kLayer1;
    if (l2.count(e)) nm |= kLayer2;
    if (nm)
      m.graph.add(e, nm);
    else
      m.deleted.push_back(e);
  }
  for (int which = 1; which <= 2; ++which) {
    for (const Edge& e : which == 1 ? l1 : l2) {
      if (!is_fresh(e)) continue;
      if (!m.graph.contains(e)) ++m.added;
      m.graph.add(e, which == 1 ? kLayer1 : kLayer2);
    }
  }
  return m;
}

/// The local certificate for keeping connectivity: at most one old edge lost, and if one
/// is lost, the fresh vertex is adjacent to both of its endpoints.
inline bool deletion_contract(const Merge& m, int fresh) {
  if (m.deleted.size() > 1) return false;
  if (m.deleted.empty()) return true;
  const Edge& d = m.deleted.front();
  return m.graph.contains(Edge(fresh, d.u)) && m.graph.contains(Edge(fresh, d.v));
}

inline int degree_in(const LayeredGraph& g, int v) {
  int d = 0;
  for (const auto& [e, m] : g.tagged_edges()) d += e.has(v);
  return d;
}

}  // namespace detail

/// For an interior vertex s adjacent to a hull vertex whose neighbours induce a cycle, walks the link of s counterclockwise
/// from a hull neighbour v_1 whose link edge v_1 v_2 is not a hull edge and returns the
/// first link edge whose quadrilateral is convex, with its triangle (s, v_i, v_{i+1}).
inline std::pair<Triangle, Edge> find_flippable_opposite(const Triangulation& t, int s) {
  require(t.is_active(s) && !t.is_hull_vertex(s), "vertex must be an interior vertex of the triangulation");
  if (t.vertex_count() >= 4 && classify(t) == TriangulationKind::Wheel)
    fail(ErrorKind::Precondition, "no flippable opposite edge is guaranteed in a wheel");
  const std::vector<int> ring = t.neighbors_ccw(s);
  const std::size_t k = ring.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 2; j < k; ++j)
      if (!(i == 0 && j + 1 == k)) require(!t.has_edge(Edge(ring[i], ring[j])), "neighbours of the vertex must induce a cycle");
  bool any_hull = false;
  for (std::size_t i = 0; i < k; ++i) {
    const int v1 = ring[i];
    if (!t.is_hull_vertex(v1)) continue;
    any_hull = true;
    if (t.is_hull_edge(Edge(v1, ring[(i + 1) % k]))) continue;
    for (std::size_t step = 0; step < k; ++step) {
      const int a = ring[(i + step) % k];
      const int b = ring[(i + step + 1) % k];
      if (t.is_flippable(Edge(a, b))) return {Triangle{s, a, b}, Edge(a, b)};
    }
  }
  require(any_hull, "vertex must be adjacent to a hull vertex");
  fail(ErrorKind::Internal, "no flippable edge opposite the vertex");
}

struct InteriorInsertion {
  int corner_case = 0;  // 1, 2 or 3: number of distinct corners of the two located triangles
  std::string route;
  int degree = 0;
  std::vector<Edge> deleted;
};

namespace detail {

/// Apex gained by s when flipping the link edge e of t.
inline int flip_gain(const Triangulation& t, int s, const Edge& e) {
  const auto ap = t.apices(e);
  for (int w : ap)
    if (w != s) return w;
  fail(ErrorKind::Internal, "link edge without an opposite triangle");
}

inline std::set<int> union_neighbors(const Triangulation& a, const Triangulation& b, int s) {
  std::set<int> out(a.neighbors(s).begin(), a.neighbors(s).end());
  out.insert(b.neighbors(s).begin(), b.neighbors(s).end());
  return out;
}

/// Bounded exhaustive search over flips of link edges of s in either layer.
inline std::optional<std::pair<Triangulation, Triangulation>> search_link_flips(
    const Triangulation& t0, const Triangulation& t1, int s, const std::function<bool(const Triangulation&, const Triangulation&)>& ok,
    int depth) {
  if (ok(t0, t1)) return std::pair{t0, t1};
  if (depth == 0) return std::nullopt;
  for (int layer = 0; layer < 2; ++layer) {
    const Triangulation& t = layer == 0 ? t0 : t1;
    const std::vector<int> ring = t.neighbors_ccw(s);
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Edge e(ring[i], ring[(i + 1) % ring.size()]);
      if (!t.is_flippable(e)) continue;
      Triangulation next = t;
      next.flip(e);
      auto r = layer == 0 ? search_link_flips(next, t1, s, ok, depth - 1) : search_link_flips(t0, next, s, ok, depth - 1);
      if (r) return r;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Inserts s (strictly inside the hull of the active set, outside the hull of its interior
/// vertices) so that s gets at least 5 neighbours and at most one old edge is lost.
///
/// Both layers are completed to triangulations, s is joined to the corners of its triangle
/// in each, and then the case analysis on the number of distinct corners decides which link
/// edges to flip. If that case analysis ends without meeting the local certificate, a
/// bounded search over up to three link flips is used and reported as such.
inline InteriorInsertion insert_interior_point(InsertionState& st, int s) {
  const PointSet& ps = *st.points;
  require(s >= 0 && s < static_cast<int>(ps.size()) && !st.is_active(s), "vertex must be a new id of the point set");
  const std::vector<int> hull = convex_hull(ps, st.active);
  require(strictly_inside_convex(ps, hull, ps[s]), "point must lie strictly inside the current convex hull");
  std::vector<int> interior;
  for (int v : st.active)
    if (std::find(hull.begin(), hull.end(), v) == hull.end()) interior.push_back(v);
  if (interior.size() >= 3)
    require(!strictly_inside_convex(ps, convex_hull(ps, interior), ps[s]), "point must lie outside the hull of the interior vertices");

  std::array<Triangulation, 2> t{complete_triangulation(st.points, st.active, st.graph.layer(1)),
                                 complete_triangulation(st.points, st.active, st.graph.layer(2))};
  std::array<Triangle, 2> tri{};
  for (int k = 0; k < 2; ++k) {
    const auto f = t[static_cast<std::size_t>(k)].locate(ps[s]);
    ensure(f.has_value(), "interior point not inside any triangle");
    tri[static_cast<std::size_t>(k)] = *f;
    t[static_cast<std::size_t>(k)].insert_in_face(s, *f);
  }
  std::set<int> corners(tri[0].begin(), tri[0].end());
  corners.insert(tri[1].begin(), tri[1].end());
  const int distinct = static_cast<int>(corners.size());

  std::vector<int> next_active = st.active;
  next_active.insert(std::lower_bound(next_active.begin(), next_active.end(), s), s);
  auto evaluate = [&](const Triangulation& a, const Triangulation& b) {
    return detail::merge_layers(st.graph, a.edges(), b.edges(), {s});
  };
  auto acceptable = [&](const Triangulation& a, const Triangulation& b) {
    const auto m = evaluate(a, b);
    return detail::degree_in(m.graph, s) >= 5 && detail::deletion_contract(m, s);
  };

  InteriorInsertion rep;
  rep.corner_case = distinct >= 5 ? 1 : distinct == 4 ? 2 : 3;
  std::array<Triangulation, 2> lit = t;
  bool literal_done = true;
  try {
    if (distinct == 4) {
      const auto nb = detail::union_neighbors(lit[0], lit[1], s);
      const Edge e0 = find_flippable_opposite(lit[0], s).second;
      const Edge e1 = find_flippable_opposite(lit[1], s).second;
      if (!nb.count(detail::flip_gain(lit[0], s, e0))) {
        lit[0].flip(e0);
      } else if (!nb.count(detail::flip_gain(lit[1], s, e1))) {
        lit[1].flip(e1);
      } else {
        // both flips reach the fourth corner: flip in the first layer, then flip a link
        // edge of the resulting 4-cycle
        lit[0].flip(e0);
        lit[0].flip(find_flippable_opposite(lit[0], s).second);
      }
    } else if (distinct == 3) {
      const Edge e0 = find_flippable_opposite(lit[0], s).second;
      const Edge e1 = find_flippable_opposite(lit[1], s).second;
      const int g0 = detail::flip_gain(lit[0], s, e0);
      const int g1 = detail::flip_gain(lit[1], s, e1);
      if (e0 != e1 || g0 != g1) {
        lit[0].flip(e0);
        lit[1].flip(e1);
      } else {
        // same edge, same apex: use a layer where the outer diagonal of the 4-cycle is absent
        int opposite = -1;
        for (int c : tri[0])
          if (!e0.has(c)) opposite = c;
        const Edge outer(opposite, g0);
        const std::size_t j = !lit[0].has_edge(outer) ? 0 : 1;
        lit[j].flip(e0);
        lit[j].flip(find_flippable_opposite(lit[j], s).second);
      }
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Internal && e.kind() != ErrorKind::Precondition) throw;
    literal_done = false;
  }

  std::optional<std::pair<Triangulation, Triangulation>> result;
  if (literal_done && acceptable(lit[0], lit[1])) {
    result = std::pair{lit[0], lit[1]};
    rep.route = "case " + std::to_string(rep.corner_case);
  } else {
    result = detail::search_link_flips(t[0], t[1], s, acceptable, 3);
    ensure(result.has_value(), "interior insertion found no admissible flip sequence");
    rep.route = "case " + std::to_string(rep.corner_case) + " (search)";
  }
  const auto m = evaluate(result->first, result->second);
  ensure(is_plane(ps, m.graph.layer(1)) && is_plane(ps, m.graph.layer(2)), "interior insertion broke a layer");
  rep.degree = detail::degree_in(m.graph, s);
  rep.deleted = m.deleted;
  st.graph = m.graph;
  st.activate(s);
  st.steps.push_back({"interior", {s}, rep.route, m.added, static_cast<int>(m.deleted.size())});
  return rep;
}


namespace detail {

/// Hull edges visible from an exterior point, as the cyclic run start, start+1, ..., start+len-1
/// of edge indices (edge j joins hull[j] and hull[j+1]).
struct Interval {
  int start = 0;
  int len = 0;
  bool has(int j, int p) const { return ((j - start) % p + p) % p < len; }
};

inline Interval visible_interval(const PointSet& ps, const std::vector<int>& hull, const Point& s) {
  const int p = static_cast<int>(hull.size());
  std::vector<char> vis(static_cast<std::size_t>(p));
  int count = 0;
  for (int j = 0; j < p; ++j) {
    vis[static_cast<std::size_t>(j)] = sees_edge(s, ps[hull[static_cast<std::size_t>(j)]], ps[hull[static_cast<std::size_t>((j + 1) % p)]]);
    count += vis[static_cast<std::size_t>(j)];
  }
  if (count == 0) return {};
  ensure(count < p, "a point sees every hull edge");
  int start = 0;
  while (!(vis[static_cast<std::size_t>(start)] && !vis[static_cast<std::size_t>((start + p - 1) % p)])) ++start;
  for (int k = 0; k < count; ++k) ensure(vis[static_cast<std::size_t>((start + k) % p)], "visible edges are not contiguous");
  return {start, count};
}

inline bool share_edge(const Interval& a, const Interval& b, int p) {
  for (int k = 0; k < a.len; ++k)
    if (b.has(a.start + k, p)) return true;
  return false;
}

/// Longest cyclic run of marked entries.
inline int longest_run(const std::vector<char>& mark) {
  const int p = static_cast<int>(mark.size());
  if (std::all_of(mark.begin(), mark.end(), [](char c) { return c != 0; })) return p;
  int best = 0, cur = 0;
  for (int k = 0; k < 2 * p; ++k) {
    cur = mark[static_cast<std::size_t>(k % p)] ? cur + 1 : 0;
    best = std::max(best, cur);
  }
  return best;
}

inline std::vector<int> sorted_union(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline bool contains_id(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace detail

struct PropertyReport {
  bool ok = true;
  std::string violation;
};

/// Visibility property for adding the points `sb` around the points `sa`: the hull of `sa`
/// has at least 4 vertices, every point of `sb` is a vertex of the hull of the union, and
/// any k consecutive such vertices (k smaller than the hull size of `sa`) jointly see at
/// least k + 2 consecutive edges of the hull of `sa`.
inline PropertyReport check_property_maxi(const PointSet& ps, const std::vector<int>& sa, const std::vector<int>& sb) {
  auto bad = [](std::string msg) { return PropertyReport{false, std::move(msg)}; };
  if (sa.size() < 3) return bad("inner set has fewer than 3 points");
  const std::vector<int> ha = convex_hull(ps, sa);
  const int p = static_cast<int>(ha.size());
  if (p < 4) return bad("inner hull has fewer than 4 vertices");
  const std::vector<int> hu = convex_hull(ps, detail::sorted_union(sa, sb));
  const int h = static_cast<int>(hu.size());
  std::vector<char> fresh(static_cast<std::size_t>(h), 0);
  std::map<int, detail::Interval> vis;
  for (int b : sb) {
    const auto it = std::find(hu.begin(), hu.end(), b);
    if (it == hu.end()) return bad("point " + std::to_string(b) + " is not a vertex of the outer hull");
    fresh[static_cast<std::size_t>(it - hu.begin())] = 1;
    vis[b] = detail::visible_interval(ps, ha, ps[b]);
  }
  const bool all_fresh = std::all_of(fresh.begin(), fresh.end(), [](char c) { return c != 0; });
  for (int start = 0; start < h; ++start) {
    if (!fresh[static_cast<std::size_t>(start)]) continue;
    std::vector<char> mark(static_cast<std::size_t>(p), 0);
    for (int k = 1; k <= std::min(h, p - 1); ++k) {
      const int idx = (start + k - 1) % h;
      if (!fresh[static_cast<std::size_t>(idx)]) break;
      if (!all_fresh && k > 1 && idx == start) break;
      const detail::Interval& iv = vis[hu[static_cast<std::size_t>(idx)]];
      for (int t = 0; t < iv.len; ++t) mark[static_cast<std::size_t>((iv.start + t) % p)] = 1;
      const int run = detail::longest_run(mark);
      if (run < k + 2)
        return bad(std::to_string(k) + " consecutive outer vertices starting at " + std::to_string(hu[static_cast<std::size_t>(start)]) +
                   " see only " + std::to_string(run) + " consecutive inner hull edges");
    }
  }
  return {};
}

/// Same check for two separate point sets; ids of `sb` follow those of `sa`.
inline PropertyReport check_property_maxi(const PointSet& sa, const PointSet& sb) {
  std::vector<Point> pts = sa.points();
  pts.insert(pts.end(), sb.points().begin(), sb.points().end());
  const PointSet all(pts);
  std::vector<int> a = all_ids(sa.size()), b;
  for (std::size_t i = 0; i < sb.size(); ++i) b.push_back(static_cast<int>(sa.size() + i));
  return check_property_maxi(all, a, b);
}

/// For `sa` strictly inside the hull of `sb`, with consecutive hull vertices of `sb` sharing a
/// visible edge: every run of k consecutive hull edges of `sb` jointly sees at least k hull
/// edges of `sa` (an edge is seen when both of its endpoints see it).
inline bool edge_visibility_hall_holds(const PointSet& ps, const std::vector<int>& sa, const std::vector<int>& sb) {
  const PropertyReport prop = check_property_maxi(ps, sa, sb);
  require(prop.ok, "visibility property fails: " + prop.violation);
  const std::vector<int> ha = convex_hull(ps, sa);
  const std::vector<int> hb = convex_hull(ps, detail::sorted_union(sa, sb));
  require(hb.size() == sb.size(), "inner points must lie strictly inside the hull of the outer points");
  const int p = static_cast<int>(ha.size());
  const int q = static_cast<int>(hb.size());
  std::vector<detail::Interval> vis;
  for (int b : hb) vis.push_back(detail::visible_interval(ps, ha, ps[b]));
  for (int i = 0; i < q; ++i)
    require(detail::share_edge(vis[static_cast<std::size_t>(i)], vis[static_cast<std::size_t>((i + 1) % q)], p),
            "consecutive outer vertices must share a visible edge");
  for (int start = 0; start < q; ++start) {
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    for (int k = 1; k <= q; ++k) {
      const int i = (start + k - 1) % q;
      for (int j = 0; j < p; ++j)
        if (vis[static_cast<std::size_t>(i)].has(j, p) && vis[static_cast<std::size_t>((i + 1) % q)].has(j, p)) seen[static_cast<std::size_t>(j)] = 1;
      if (std::count(seen.begin(), seen.end(), 1) < k) return false;
    }
  }
  return true;
}

struct HullInsertion {
  std::string route;                      // "hull case 1" or "hull case 2"
  std::vector<std::string> chain_routes;  // per chain: "2(a)", "2(b)" ...
  std::vector<Edge> deleted;
};

namespace detail {

/// Maximum bipartite matching (augmenting paths); match[i] = right vertex or -1.
inline std::vector<int> bipartite_matching(int left, int right, const std::function<bool(int, int)>& adj) {
  std::vector<int> owner(static_cast<std::size_t>(right), -1);
  std::vector<int> match(static_cast<std::size_t>(left), -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int i, std::vector<char>& seen) {
    for (int j = 0; j < right; ++j) {
      if (!adj(i, j) || seen[static_cast<std::size_t>(j)]) continue;
      seen[static_cast<std::size_t>(j)] = 1;
      if (owner[static_cast<std::size_t>(j)] < 0 || augment(owner[static_cast<std::size_t>(j)], seen)) {
        owner[static_cast<std::size_t>(j)] = i;
        match[static_cast<std::size_t>(i)] = j;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < left; ++i) {
    std::vector<char> seen(static_cast<std::size_t>(right), 0);
    augment(i, seen);
  }
  return match;
}

/// Two convex polygons (CCW) have disjoint interiors iff some edge line of one has the other
/// entirely on its closed outer side.
inline bool convex_interiors_disjoint(const PointSet& ps, const std::vector<int>& a, const std::vector<int>& b) {
  auto separates = [&](const std::vector<int>& p, const std::vector<int>& q) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point& x = ps[p[i]];
      const Point& y = ps[p[(i + 1) % p.size()]];
      if (std::none_of(q.begin(), q.end(), [&](int v) { return orientation(x, y, ps[v]) == Orientation::CCW; })) return true;
    }
    return false;
  };
  return separates(a, b) || separates(b, a);
}

struct Wiring {
  std::vector<std::pair<Edge, int>> add;       // edge, layer (1 or 2)
  std::vector<std::pair<Edge, int>> displace;  // edge added to a layer after evicting what it crosses
};

}  // namespace detail

/// Adds the points `sb` (vertices of the new convex hull) to the graph so that connectivity is
/// kept. The current active set plays the inner role; the visibility property must hold.
///
/// When all outer hull vertices are new and consecutive ones share a visible inner edge,
/// each outer hull edge is matched to a distinct visible inner edge, the matching is
/// uncrossed, and each matched pair forms a quadrilateral wired across both layers.
/// Otherwise the outer hull splits into chains of new vertices that are wired one by one.
inline HullInsertion insert_hull_points(InsertionState& st, std::vector<int> sb) {
  const PointSet& ps = *st.points;
  std::sort(sb.begin(), sb.end());
  require(!sb.empty() && std::adjacent_find(sb.begin(), sb.end()) == sb.end(), "hull points must be distinct and nonempty");
  for (int b : sb) require(b >= 0 && b < static_cast<int>(ps.size()) && !st.is_active(b), "hull point must be a new id");
  const std::vector<int> sa = st.active;
  const PropertyReport prop = check_property_maxi(ps, sa, sb);
  if (!prop.ok) fail(ErrorKind::Precondition, "hull points violate the visibility property: " + prop.violation);

  const std::vector<int> ha = convex_hull(ps, sa);
  const int p = static_cast<int>(ha.size());
  const std::vector<int> hu = convex_hull(ps, detail::sorted_union(sa, sb));
  const int h = static_cast<int>(hu.size());
  std::map<int, detail::Interval> vis;
  for (int b : sb) vis[b] = detail::visible_interval(ps, ha, ps[b]);
  auto is_new = [&](int v) { return std::binary_search(sb.begin(), sb.end(), v); };
  auto inner = [&](int j) { return ha[static_cast<std::size_t>(((j % p) + p) % p)]; };
  auto at = [&](int i) { return hu[static_cast<std::size_t>(((i % h) + h) % h)]; };
  auto breaks_after = [&](int i) {
    const int x = at(i), y = at(i + 1);
    return !is_new(x) || !is_new(y) || !detail::share_edge(vis[x], vis[y], p);
  };

  HullInsertion rep;

  // Applies a wiring for the fresh vertices; edges evicted by a displacement move to the
  // other layer when they fit there, otherwise they count as deleted.
  auto apply = [&](const std::vector<int>& fresh, const detail::Wiring& w, const std::string& route) {
    std::array<EdgeSet, 3> layer{EdgeSet{}, st.graph.layer(1), st.graph.layer(2)};
    for (const auto& [d, k] : w.displace) {
      const int other = 3 - k;
      const Triangulation t_other = complete_triangulation(st.points, sa, detail::layer_within(st.graph, other, sa));
      const EdgeSet current = layer[static_cast<std::size_t>(k)];
      for (const Edge& e : current) {
        if (!edges_cross(ps, e, d)) continue;
        layer[static_cast<std::size_t>(k)].erase(e);
        if (t_other.has_edge(e)) layer[static_cast<std::size_t>(other)].insert(e);
      }
      layer[static_cast<std::size_t>(k)].insert(d);
    }
    for (const auto& [e, k] : w.add) layer[static_cast<std::size_t>(k)].insert(e);
    const detail::Merge m = detail::merge_layers(st.graph, layer[1], layer[2], fresh);
    ensure(is_plane(ps, m.graph.layer(1)) && is_plane(ps, m.graph.layer(2)), "hull insertion (" + route + ") broke a layer");
    ensure(m.deleted.size() <= 1, "hull insertion deleted more than one edge");
    if (!m.deleted.empty()) {
      const Edge& d = m.deleted.front();
      ensure(std::any_of(fresh.begin(), fresh.end(),
                         [&](int b) { return m.graph.contains(Edge(b, d.u)) && m.graph.contains(Edge(b, d.v)); }),
             "deleted edge is not bridged by a new vertex");
    }
    for (int b : fresh) ensure(detail::degree_in(m.graph, b) >= 5, "new hull vertex has degree below 5");
    rep.deleted.insert(rep.deleted.end(), m.deleted.begin(), m.deleted.end());
    st.graph = m.graph;
    for (int b : fresh) st.activate(b);
    st.steps.push_back({"boundary", fresh, route, m.added, static_cast<int>(m.deleted.size())});
  };

  bool cyclic = true;
  for (int i = 0; i < h; ++i) cyclic = cyclic && !breaks_after(i);

  if (cyclic) {
    rep.route = "hull case 1";
    const int q = h;
    auto sees = [&](int i, int j) { return vis[at(i)].has(j, p) && vis[at(i + 1)].has(j, p); };
    std::vector<int> match = detail::bipartite_matching(q, p, sees);
    ensure(std::none_of(match.begin(), match.end(), [](int j) { return j < 0; }), "no matching of outer to inner hull edges");
    auto quad = [&](int i) {
      const int j = match[static_cast<std::size_t>(i)];
      return convex_hull(ps, std::vector<int>{at(i), at(i + 1), inner(j), inner(j + 1)});
    };
    auto crossing_pairs = [&]() {
      int c = 0;
      for (int i = 0; i < q; ++i)
        for (int k = i + 1; k < q; ++k) c += !detail::convex_interiors_disjoint(ps, quad(i), quad(k));
      return c;
    };
    int crossings = crossing_pairs();
    for (int guard = 0; crossings > 0 && guard < q * q * 4; ++guard) {
      bool improved = false;
      for (int i = 0; i < q && !improved; ++i) {
        for (int k = i + 1; k < q && !improved; ++k) {
          if (detail::convex_interiors_disjoint(ps, quad(i), quad(k))) continue;
          const int ji = match[static_cast<std::size_t>(i)], jk = match[static_cast<std::size_t>(k)];
          if (!sees(i, jk) || !sees(k, ji)) continue;
          std::swap(match[static_cast<std::size_t>(i)], match[static_cast<std::size_t>(k)]);
          const int after = crossing_pairs();
          if (after < crossings) {
            crossings = after;
            improved = true;
          } else {
            std::swap(match[static_cast<std::size_t>(i)], match[static_cast<std::size_t>(k)]);
          }
        }
      }
      if (!improved) break;
    }
    detail::Wiring w;
    for (int i = 0; i < q; ++i) {
      const int j = match[static_cast<std::size_t>(i)];
      w.add.emplace_back(Edge(at(i), at(i + 1)), 1);
      w.add.emplace_back(Edge(at(i), inner(j)), 1);
      w.add.emplace_back(Edge(at(i), inner(j + 1)), 1);
      w.add.emplace_back(Edge(at(i + 1), inner(j)), 2);
    }
    apply(std::vector<int>(hu.begin(), hu.end()), w, rep.route);
    return rep;
  }

  rep.route = "hull case 2";
  int first_break = 0;
  while (!breaks_after(first_break)) ++first_break;
  std::vector<std::vector<int>> chains;
  std::vector<int> cur;
  for (int k = 1; k <= h; ++k) {
    const int i = first_break + k;
    if (is_new(at(i))) cur.push_back(at(i));
    if (breaks_after(i) && !cur.empty()) {
      chains.push_back(cur);
      cur.clear();
    }
  }

  for (const std::vector<int>& chain : chains) {
    const int q = static_cast<int>(chain.size());
    auto b = [&](int i) { return chain[static_cast<std::size_t>(i)]; };
    // visible intervals unwrapped relative to the first chain vertex
    std::vector<int> lo(static_cast<std::size_t>(q)), hi(static_cast<std::size_t>(q));
    int offset = 0;
    for (int i = 0; i < q; ++i) {
      if (i > 0) offset += ((vis[b(i)].start - vis[b(i - 1)].start) % p + p) % p;
      lo[static_cast<std::size_t>(i)] = offset;
      hi[static_cast<std::size_t>(i)] = offset + vis[b(i)].len - 1;
      if (i > 0) ensure(hi[static_cast<std::size_t>(i)] >= hi[static_cast<std::size_t>(i - 1)], "visible arcs along a chain are not monotone");
    }
    const int edges = hi.back() + 1;
    ensure(edges <= p, "chain sees more than the whole inner hull");
    const int u0 = vis[b(0)].start;
    auto arc = [&](int k) { return inner(u0 + k); };  // arc vertex k, k = 0..edges
    detail::Wiring w;
    std::string route;

    if (q == 1) {
      const int vertices = edges + 1;
      ensure(vertices >= 4, "single hull point sees fewer than 3 edges");
      for (int k = 0; k <= edges; ++k) w.add.emplace_back(Edge(b(0), arc(k)), 1);
      if (vertices >= 5) {
        route = "2(b) fan";
      } else {
        // exactly three visible edges a1a2, a2a3, a3a4: reach one more inner vertex
        const int a1 = arc(0), a2 = arc(1), a3 = arc(2), a4 = arc(3);
        std::optional<Triangulation> tp;
        int k = 0;
        for (int layer = 1; layer <= 2 && !tp; ++layer) {
          Triangulation t = complete_triangulation(st.points, sa, detail::layer_within(st.graph, layer, sa));
          int inner_edges = 0;
          for (int v : t.neighbors(a2)) inner_edges += !t.is_hull_edge(Edge(a2, v));
          if (inner_edges >= 2) {
            tp = std::move(t);
            k = layer;
          }
        }
        ensure(tp.has_value(), "neither layer has two interior edges at the middle vertex");
        const int v1 = *tp->apex_left(a1, a2), v2 = *tp->apex_left(a2, a3), v3 = *tp->apex_left(a3, a4);
        const Point& pb = ps[b(0)];
        auto convex_with = [&](int apex, int x, int y) { return segments_properly_cross(pb, ps[apex], ps[x], ps[y]); };
        if (!(v2 == a4 && v3 == a2)) {
          const std::array<std::array<int, 3>, 3> tri{{{v1, a1, a2}, {v2, a2, a3}, {v3, a3, a4}}};
          bool found = false;
          for (const auto& [v, x, y] : tri) {
            if (convex_with(v, x, y)) {
              w.displace.emplace_back(Edge(b(0), v), k);
              found = true;
              break;
            }
          }
          ensure(found, "no triangle next to the visible edges forms a convex quadrilateral with the hull point");
          route = "2(b) distinct triangles";
        } else {
          const int vp = *tp->apex_left(a2, a4);
          if (convex_with(v1, a1, a2)) {
            w.displace.emplace_back(Edge(b(0), v1), k);
            route = "2(b) shared triangle, first";
          } else {
            ensure(convex_with(vp, a2, a4), "no convex quadrilateral across the shared triangle");
            w.displace.emplace_back(Edge(b(0), vp), k);
            route = "2(b) shared triangle, across";
          }
        }
      }
    } else {
      // assign the visible edges 0..edges-1 to chain vertices
      std::vector<std::vector<int>> owned(static_cast<std::size_t>(q));
      ensure(lo[0] == 0 && hi[0] >= 1, "first chain vertex sees fewer than two edges");
      owned[0] = {0, 1};
      int ptr = 2;
      while (ptr <= hi[0] && ptr < lo[1]) owned[0].push_back(ptr++);
      for (int i = 1; i < q; ++i) {
        const int e = std::max(ptr, lo[static_cast<std::size_t>(i)]);
        ensure(e == ptr && e <= hi[static_cast<std::size_t>(i)], "visible edges of a chain are not covered");
        owned[static_cast<std::size_t>(i)].push_back(ptr++);
        const int limit = i + 1 < q ? lo[static_cast<std::size_t>(i + 1)] : edges;
        while (ptr <= hi[static_cast<std::size_t>(i)] && ptr < limit) owned[static_cast<std::size_t>(i)].push_back(ptr++);
      }
      ensure(ptr == edges, "visible edges of a chain are not covered");
      const std::size_t last = static_cast<std::size_t>(q - 1);
      ensure(owned[last].size() >= 2, "last chain vertex owns fewer than two edges");
      auto join_owned = [&](int i, std::size_t skip_tail) {
        const auto& own = owned[static_cast<std::size_t>(i)];
        for (std::size_t t = 0; t + skip_tail < own.size(); ++t) {
          w.add.emplace_back(Edge(b(i), arc(own[t])), 1);
          w.add.emplace_back(Edge(b(i), arc(own[t] + 1)), 1);
        }
      };
      for (int i = 0; i + 1 < q; ++i) w.add.emplace_back(Edge(b(i), b(i + 1)), 1);
      if (owned[last].size() >= 3) {
        for (int i = 0; i < q; ++i) join_owned(i, 0);
        route = "2(a)";
      } else {
        ensure(owned[last - 1].back() == edges - 3, "edge before the last two is not owned by the previous vertex");
        for (int i = 0; i + 2 < q; ++i) join_owned(i, 0);
        join_owned(q - 2, 1);
        w.add.emplace_back(Edge(b(q - 2), arc(edges - 3)), 1);
        for (int k = edges - 3; k <= edges; ++k) w.add.emplace_back(Edge(b(q - 1), arc(k)), 1);
        route = "2(a) short end";
      }
      for (int i = 0; i + 1 < q; ++i) {
        const int f = owned[static_cast<std::size_t>(i + 1)].front();
        w.add.emplace_back(Edge(b(i), arc(f)), 2);
        w.add.emplace_back(Edge(b(i), arc(f + 1)), 2);
      }
    }
    rep.chain_routes.push_back(route);
    apply(chain, w, "hull case " + route);
  }
  return rep;
}

/// Result of the general construction. Phase lists are in insertion order.
struct GeneralBuild {
  LayeredGraph graph;
  std::vector<int> core;  // CCW
  std::vector<int> interior, boundary, exterior;
  std::vector<InsertionStep> steps;
};

using InsertionObserver = std::function<void(const InsertionState&)>;

/// 5-connected biplane graph on a point set in general position whose largest convex subset
/// has at least 14 points. The convex construction on that subset is extended by the points
/// inside it (left to right), then the remaining outer hull points at once, then the other
/// outside points in reverse peeling order. `observe` is called after every step.
inline GeneralBuild build_5conn_general(const PointSet& ps, const InsertionObserver& observe = {}) {
  const int n = static_cast<int>(ps.size());
  require(n >= 14, "need at least 14 points in convex position");
  auto sp = std::make_shared<const PointSet>(ps);
  const std::vector<int> core = convex_hull(ps, max_convex_subset(ps));
  require(core.size() >= 14,
          "largest convex subset has " + std::to_string(core.size()) + " points; at least 14 are needed");

  LayeredGraph g(ps);
  for (const auto& [e, mask] : five_connected_convex_edges(core)) g.add(e, mask);
  InsertionState st(sp, core, g);
  st.steps.push_back({"core", core, "convex", static_cast<int>(g.edge_count()), 0});
  if (observe) observe(st);

  GeneralBuild out;
  out.core = core;
  const std::vector<int> outer = convex_hull(ps);
  std::vector<int> exterior_set;
  for (int v = 0; v < n; ++v) {
    if (detail::contains_id(core, v)) continue;
    if (strictly_inside_convex(ps, core, ps[v]))
      out.interior.push_back(v);
    else if (detail::contains_id(outer, v))
      out.boundary.push_back(v);
    else
      exterior_set.push_back(v);
  }
  std::sort(out.interior.begin(), out.interior.end(), [&](int a, int b) { return ps[a] < ps[b]; });
  for (int s : out.interior) {
    insert_interior_point(st, s);
    if (observe) observe(st);
  }
  if (!out.boundary.empty()) {
    insert_hull_points(st, out.boundary);
    if (observe) observe(st);
  }
  // peel: repeatedly remove the lowest id outside point on the hull of core + remaining
  std::vector<int> peel, remaining = exterior_set;
  while (!remaining.empty()) {
    const std::vector<int> h = convex_hull(ps, detail::sorted_union(core, remaining));
    auto it = std::find_if(remaining.begin(), remaining.end(), [&](int v) { return detail::contains_id(h, v); });
    ensure(it != remaining.end(), "peeling found no outside point on the hull");
    peel.push_back(*it);
    remaining.erase(it);
  }
  out.exterior.assign(peel.rbegin(), peel.rend());
  for (int s : out.exterior) {
    insert_interior_point(st, s);
    st.steps.back().phase = "exterior";
    if (observe) observe(st);
  }
  out.graph = st.graph;
  out.steps = st.steps;
  return out;
}

}  // namespace biplane
