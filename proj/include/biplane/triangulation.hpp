#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"

namespace biplane {

/// The two triangles around a non-hull edge {u, v}, as the CCW quadrilateral (u, b, v, a)
/// where (u, v, a) and (v, u, b) are the incident CCW triangles.
struct Quad {
  std::array<int, 4> ccw{};
  Edge diagonal;
  Edge other_diagonal() const { return Edge(ccw[1], ccw[3]); }
};

using Triangle = std::array<int, 3>;

/// Plane triangulation of an "active" subset of a point set, with face adjacency stored per
/// edge (the apex of the triangle on each side). Ids are always ids of the full point set,
/// so triangulations of different subsets of one PointSet share a coordinate system.
class Triangulation {
 public:
  Triangulation() = default;

  /// Builds and validates the face structure of a triangulation given as an edge set.
  static Triangulation from_edges(std::shared_ptr<const PointSet> ps, std::vector<int> vertices, const EdgeSet& edges) {
    Triangulation t;
    t.ps_ = std::move(ps);
    std::sort(vertices.begin(), vertices.end());
    t.vertices_ = std::move(vertices);
    t.active_.assign(t.ps_->size(), 0);
    for (int v : t.vertices_) t.active_[static_cast<std::size_t>(v)] = 1;
    t.adj_.assign(t.ps_->size(), {});
    for (const Edge& e : edges) {
      require(t.is_active(e.u) && t.is_active(e.v), "triangulation edge uses an inactive vertex");
      t.add_adjacency(e);
    }
    t.edges_ = edges;
    t.build_faces();
    t.validate();
    return t;
  }

  static Triangulation from_edges(const PointSet& ps, const EdgeSet& edges) {
    return from_edges(std::make_shared<const PointSet>(ps), all_ids(ps.size()), edges);
  }

  const PointSet& points() const { return *ps_; }
  std::shared_ptr<const PointSet> shared_points() const { return ps_; }
  const Point& point(int v) const { return (*ps_)[v]; }
  const std::vector<int>& vertices() const { return vertices_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  bool is_active(int v) const { return v >= 0 && v < static_cast<int>(active_.size()) && active_[static_cast<std::size_t>(v)]; }

  const EdgeSet& edges() const { return edges_; }
  bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  /// CCW hull of the active vertices (cached).
  const std::vector<int>& hull() const {
    if (hull_.empty()) hull_ = convex_hull(*ps_, vertices_);
    return hull_;
  }

  bool is_hull_vertex(int v) const {
    const auto& h = hull();
    return std::find(h.begin(), h.end(), v) != h.end();
  }

  bool is_hull_edge(const Edge& e) const {
    const auto& h = hull();
    for (std::size_t i = 0; i < h.size(); ++i)
      if (Edge(h[i], h[(i + 1) % h.size()]) == e) return true;
    return false;
  }

  /// Apex of the triangle on the left of the directed edge a -> b, if any.
  std::optional<int> apex_left(int a, int b) const {
    auto it = opp_.find(Edge(a, b));
    if (it == opp_.end()) return std::nullopt;
    const int slot = a < b ? 0 : 1;
    const int w = it->second[static_cast<std::size_t>(slot)];
    if (w < 0) return std::nullopt;
    return w;
  }

  /// Apices of the (one or two) triangles incident to e.
  std::vector<int> apices(const Edge& e) const {
    std::vector<int> out;
    auto it = opp_.find(e);
    require(it != opp_.end(), "edge not in triangulation");
    for (int w : it->second)
      if (w >= 0) out.push_back(w);
    return out;
  }

  std::vector<Triangle> triangles() const {
    std::set<Triangle> seen;
    for (const auto& [e, o] : opp_) {
      if (o[0] >= 0) seen.insert(canonical({e.u, e.v, o[0]}));
      if (o[1] >= 0) seen.insert(canonical({e.v, e.u, o[1]}));
    }
    return {seen.begin(), seen.end()};
  }

  bool has_triangle(int a, int b, int c) const {
    return has_edge(Edge(a, b)) && has_edge(Edge(b, c)) && has_edge(Edge(a, c)) &&
           (apex_left(a, b) == c || apex_left(b, a) == c);
  }

  Quad quad_of_edge(const Edge& e) const {
    require(has_edge(e), "edge not in triangulation");
    const auto a = apex_left(e.u, e.v);
    const auto b = apex_left(e.v, e.u);
    if (!a || !b) fail(ErrorKind::Precondition, "quadrilateral is undefined for a convex hull edge");
    return Quad{{e.u, *b, e.v, *a}, e};
  }

  bool is_flippable(const Edge& e) const {
    if (!has_edge(e)) return false;
    const auto a = apex_left(e.u, e.v);
    const auto b = apex_left(e.v, e.u);
    if (!a || !b) return false;
    return orientation(point(*b), point(e.v), point(*a)) == Orientation::CCW &&
           orientation(point(*a), point(e.u), point(*b)) == Orientation::CCW;
  }

  /// Replaces e by the other diagonal of its quadrilateral; returns the new edge.
  Edge flip(const Edge& e) {
    if (!is_flippable(e)) fail(ErrorKind::Precondition, "edge is not flippable");
    const int u = e.u, v = e.v;
    const int a = *apex_left(u, v);
    const int b = *apex_left(v, u);
    edges_.erase(e);
    opp_.erase(e);
    remove_adjacency(e);
    const Edge ab(a, b);
    edges_.insert(ab);
    add_adjacency(ab);
    opp_[ab] = {-1, -1};
    set_apex(Edge(u, a), b);
    set_apex(Edge(v, a), b);
    set_apex(Edge(u, b), a);
    set_apex(Edge(v, b), a);
    set_apex(ab, u);
    set_apex(ab, v);
    return ab;
  }

  /// Index into triangles() of the face strictly containing s, if any.
  std::optional<Triangle> locate(const Point& s) const {
    for (const Triangle& t : triangles()) {
      if (orientation(point(t[0]), point(t[1]), s) == Orientation::CCW &&
          orientation(point(t[1]), point(t[2]), s) == Orientation::CCW &&
          orientation(point(t[2]), point(t[0]), s) == Orientation::CCW)
        return t;
    }
    return std::nullopt;
  }

  /// Activates vertex s (an id of the point set) lying strictly inside face t and joins it
  /// to the three corners.
  void insert_in_face(int s, const Triangle& t) {
    require(!is_active(s), "vertex already active");
    const int a = t[0], b = t[1], c = t[2];
    require(has_triangle(a, b, c), "face not in triangulation");
    active_[static_cast<std::size_t>(s)] = 1;
    vertices_.insert(std::lower_bound(vertices_.begin(), vertices_.end(), s), s);
    hull_.clear();
    for (int w : {a, b, c}) {
      const Edge e(s, w);
      edges_.insert(e);
      add_adjacency(e);
      opp_[e] = {-1, -1};
    }
    set_apex(Edge(s, a), b);
    set_apex(Edge(s, a), c);
    set_apex(Edge(s, b), a);
    set_apex(Edge(s, b), c);
    set_apex(Edge(s, c), a);
    set_apex(Edge(s, c), b);
    set_apex(Edge(a, b), s);
    set_apex(Edge(b, c), s);
    set_apex(Edge(c, a), s);
  }

  /// Neighbors of v sorted counterclockwise by angle.
  std::vector<int> neighbors_ccw(int v) const {
    std::vector<int> nb = neighbors(v);
    const Point& o = point(v);
    auto half = [&](int w) {
      const Point& p = point(w);
      return (p.y > o.y || (p.y == o.y && p.x > o.x)) ? 0 : 1;
    };
    std::sort(nb.begin(), nb.end(), [&](int a, int b) {
      const int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      return cross(o, point(a), point(b)) > 0;
    });
    return nb;
  }

  Graph graph() const { return Graph(static_cast<int>(ps_->size()), edges_); }

  /// Invariant checks: edge count 3n - 3 - h, no crossings, every face an empty CCW
  /// triangle, every edge with two faces unless it is a hull edge.
  void validate() const {
    const int n = vertex_count();
    require(n >= 3, "triangulation needs at least 3 vertices");
    const int h = static_cast<int>(hull().size());
    require(static_cast<int>(edges_.size()) == 3 * n - 3 - h, "edge count differs from 3n - 3 - h");
    require(is_plane(*ps_, edges_), "triangulation edges cross");
    for (const Edge& e : edges_) {
      const auto& o = opp_.at(e);
      const int faces = (o[0] >= 0) + (o[1] >= 0);
      require(faces == (is_hull_edge(e) ? 1 : 2), "edge has the wrong number of incident faces");
    }
    for (const Triangle& t : triangles()) {
      for (int w : vertices_) {
        if (w == t[0] || w == t[1] || w == t[2]) continue;
        const Point& s = point(w);
        require(!(orientation(point(t[0]), point(t[1]), s) == Orientation::CCW &&
                  orientation(point(t[1]), point(t[2]), s) == Orientation::CCW &&
                  orientation(point(t[2]), point(t[0]), s) == Orientation::CCW),
                "triangle face contains a vertex");
      }
    }
  }

 private:
  static Triangle canonical(Triangle t) {
    while (t[0] > t[1] || t[0] > t[2]) std::rotate(t.begin(), t.begin() + 1, t.end());
    return t;
  }

  void add_adjacency(const Edge& e) {
    auto ins = [](std::vector<int>& l, int w) {
      auto it = std::lower_bound(l.begin(), l.end(), w);
      if (it == l.end() || *it != w) l.insert(it, w);
    };
    ins(adj_[static_cast<std::size_t>(e.u)], e.v);
    ins(adj_[static_cast<std::size_t>(e.v)], e.u);
  }

  void remove_adjacency(const Edge& e) {
    auto del = [](std::vector<int>& l, int w) { l.erase(std::remove(l.begin(), l.end(), w), l.end()); };
    del(adj_[static_cast<std::size_t>(e.u)], e.v);
    del(adj_[static_cast<std::size_t>(e.v)], e.u);
  }

  /// Records w as the apex on its side of e.
  void set_apex(const Edge& e, int w) {
    auto& o = opp_.at(e);
    const int slot = orientation(point(e.u), point(e.v), point(w)) == Orientation::CCW ? 0 : 1;
    o[static_cast<std::size_t>(slot)] = w;
  }

  void build_faces() {
    opp_.clear();
    for (const Edge& e : edges_) opp_[e] = {-1, -1};
    for (int u : vertices_) {
      const std::vector<int> ring = neighbors_ccw(u);
      const std::size_t k = ring.size();
      if (k < 2) continue;
      for (std::size_t i = 0; i < k; ++i) {
        const int v = ring[i];
        const int w = ring[(i + 1) % k];
        if (w == v) continue;
        if (cross(point(u), point(v), point(w)) <= 0) continue;
        if (!has_edge(Edge(v, w))) continue;
        set_apex(Edge(u, v), w);
      }
    }
  }

  std::shared_ptr<const PointSet> ps_;
  std::vector<int> vertices_;
  std::vector<char> active_;
  std::vector<std::vector<int>> adj_;
  EdgeSet edges_;
  std::map<Edge, std::array<int, 2>> opp_;
  mutable std::vector<int> hull_;
};

/// Deterministic scan triangulation: vertices inserted in lexicographic order, each new
/// vertex joined to every hull vertex it sees.
inline Triangulation triangulate(std::shared_ptr<const PointSet> ps, std::vector<int> vertices) {
  require(vertices.size() >= 3, "triangulation needs at least 3 points");
  const PointSet& pts = *ps;
  std::sort(vertices.begin(), vertices.end(), [&](int a, int b) { return pts[a] < pts[b]; });
  EdgeSet edges;
  std::vector<int> hull{vertices[0], vertices[1], vertices[2]};
  if (orientation(pts[hull[0]], pts[hull[1]], pts[hull[2]]) == Orientation::CW) std::swap(hull[1], hull[2]);
  edges.insert(Edge(hull[0], hull[1]));
  edges.insert(Edge(hull[1], hull[2]));
  edges.insert(Edge(hull[0], hull[2]));
  for (std::size_t k = 3; k < vertices.size(); ++k) {
    const int p = vertices[k];
    const std::size_t h = hull.size();
    std::vector<char> visible(h, 0);
    for (std::size_t i = 0; i < h; ++i)
      visible[i] = orientation(pts[hull[i]], pts[hull[(i + 1) % h]], pts[p]) == Orientation::CW;
    // first visible edge whose predecessor is not visible
    std::size_t start = 0;
    while (!(visible[start] && !visible[(start + h - 1) % h])) ++start;
    std::size_t len = 0;
    while (visible[(start + len) % h]) ++len;
    std::vector<int> next;
    for (std::size_t i = 0; i <= len; ++i) edges.insert(Edge(p, hull[(start + i) % h]));
    // rebuild hull: keep hull[start], then p, then hull[start + len] ... around
    next.push_back(hull[start]);
    next.push_back(p);
    for (std::size_t i = len; i < h; ++i) next.push_back(hull[(start + i) % h]);
    hull = std::move(next);
  }
  return Triangulation::from_edges(std::move(ps), std::move(vertices), edges);
}

inline Triangulation triangulate(const PointSet& ps) {
  return triangulate(std::make_shared<const PointSet>(ps), all_ids(ps.size()));
}

/// Completes a plane edge set to a triangulation of the given vertices by greedy insertion
/// of non-crossing candidate edges, shortest first. Any maximal plane graph is a
/// triangulation, so the result always is one.
inline Triangulation complete_triangulation(std::shared_ptr<const PointSet> ps, std::vector<int> vertices,
                                            const EdgeSet& required) {
  const PointSet& pts = *ps;
  require(is_plane(pts, required), "required edges cross");
  EdgeSet chosen = required;
  struct Cand {
    Wide len;
    Edge e;
  };
  std::vector<Cand> cands;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      const Edge e(vertices[i], vertices[j]);
      if (chosen.count(e)) continue;
      const Point& a = pts[e.u];
      const Point& b = pts[e.v];
      const Wide dx = a.x - b.x, dy = a.y - b.y;
      cands.push_back({dx * dx + dy * dy, e});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.len != b.len ? a.len < b.len : a.e < b.e;
  });
  for (const Cand& c : cands)
    if (!crosses_any(pts, c.e, chosen)) chosen.insert(c.e);
  return Triangulation::from_edges(std::move(ps), std::move(vertices), chosen);
}

enum class TriangulationKind { Wheel, Fan, Other };

/// Wheel: n - 1 hull vertices and the single interior vertex adjacent to all of them.
/// Fan: all points on the hull and one vertex adjacent to all others.
inline TriangulationKind classify(const Triangulation& t) {
  const int n = t.vertex_count();
  require(n >= 4, "classification needs at least 4 points");
  const int h = static_cast<int>(t.hull().size());
  if (h == n - 1) {
    for (int v : t.vertices())
      if (!t.is_hull_vertex(v) && t.degree(v) == n - 1) return TriangulationKind::Wheel;
  }
  if (h == n) {
    for (int v : t.vertices())
      if (t.degree(v) == n - 1) return TriangulationKind::Fan;
  }
  return TriangulationKind::Other;
}

inline const char* to_string(TriangulationKind k) {
  switch (k) {
    case TriangulationKind::Wheel: return "wheel";
    case TriangulationKind::Fan: return "fan";
    default: return "other";
  }
}

/// Union of two triangulations: layer 1 is the seed (or the scan triangulation), layer 2 is
/// built greedily from candidates ordered by (already in layer 1 last, shorter first, ids).
inline LayeredGraph saturate_to_maximal_biplane(const PointSet& ps, const std::optional<Triangulation>& seed = {}) {
  require(ps.size() >= 3, "saturation needs at least 3 points");
  const Triangulation first = seed ? *seed : triangulate(ps);
  require(first.vertex_count() == static_cast<int>(ps.size()), "seed must triangulate every point");
  const EdgeSet& l1 = first.edges();
  struct Cand {
    int shared;
    Wide len;
    Edge e;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < static_cast<int>(ps.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(ps.size()); ++j) {
      const Edge e(i, j);
      const Wide dx = ps[i].x - ps[j].x, dy = ps[i].y - ps[j].y;
      cands.push_back({l1.count(e) ? 1 : 0, dx * dx + dy * dy, e});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.shared != b.shared) return a.shared < b.shared;
    if (a.len != b.len) return a.len < b.len;
    return a.e < b.e;
  });
  EdgeSet l2;
  for (const Cand& c : cands)
    if (!crosses_any(ps, c.e, l2)) l2.insert(c.e);
  LayeredGraph g(ps);
  for (const Edge& e : l1) g.add(e, kLayer1);
  for (const Edge& e : l2) g.add(e, kLayer2);
  return g;
}

}  // namespace biplane
