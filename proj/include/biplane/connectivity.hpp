#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

namespace detail {

/// Unit-capacity flow network on the vertex-split digraph: v_in = 2v, v_out = 2v + 1.
class SplitFlow {
 public:
  explicit SplitFlow(const Graph& g) : n_(g.size()), head_(static_cast<std::size_t>(2 * n_), -1) {
    for (int v = 0; v < n_; ++v) add_arc(2 * v, 2 * v + 1);
    for (int v = 0; v < n_; ++v)
      for (int w : g.neighbors(v)) add_arc(2 * v + 1, 2 * w);
  }

  /// Number of internally vertex-disjoint s-t paths for nonadjacent s, t, capped at `limit`.
  int local_connectivity(int s, int t, int limit) {
    for (auto& a : arcs_) a.flow = 0;
    const int src = 2 * s + 1;
    const int dst = 2 * t;
    int total = 0;
    std::vector<int> via(static_cast<std::size_t>(2 * n_));
    while (total < limit) {
      std::fill(via.begin(), via.end(), -1);
      std::queue<int> q;
      q.push(src);
      via[static_cast<std::size_t>(src)] = -2;
      while (!q.empty() && via[static_cast<std::size_t>(dst)] == -1) {
        const int x = q.front();
        q.pop();
        for (int a = head_[static_cast<std::size_t>(x)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
          const Arc& arc = arcs_[static_cast<std::size_t>(a)];
          if (arc.cap - arc.flow <= 0 || via[static_cast<std::size_t>(arc.to)] != -1) continue;
          via[static_cast<std::size_t>(arc.to)] = a;
          q.push(arc.to);
        }
      }
      if (via[static_cast<std::size_t>(dst)] == -1) break;
      for (int x = dst; x != src;) {
        const int a = via[static_cast<std::size_t>(x)];
        arcs_[static_cast<std::size_t>(a)].flow += 1;
        arcs_[static_cast<std::size_t>(a ^ 1)].flow -= 1;
        x = arcs_[static_cast<std::size_t>(a ^ 1)].to;
      }
      ++total;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int flow;
    int next;
  };

  void add_arc(int from, int to) {
    arcs_.push_back({to, 1, 0, head_[static_cast<std::size_t>(from)]});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, 0, 0, head_[static_cast<std::size_t>(to)]});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
  }

  int n_;
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

}  // namespace detail

/// Exact vertex connectivity. Pair schedule: a minimum-degree vertex s against every
/// non-neighbour, then every nonadjacent pair of neighbours of s.
inline int vertex_connectivity(const Graph& g) {
  const int n = g.size();
  if (n <= 1) return 0;
  int s = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(s)) s = v;
  int best = g.degree(s);
  if (best == n - 1) return n - 1;
  detail::SplitFlow flow(g);
  for (int t = 0; t < n && best > 0; ++t) {
    if (t == s || g.adjacent(s, t)) continue;
    best = std::min(best, flow.local_connectivity(s, t, best));
  }
  const auto& nb = g.neighbors(s);
  for (std::size_t i = 0; i < nb.size() && best > 0; ++i)
    for (std::size_t j = i + 1; j < nb.size() && best > 0; ++j)
      if (!g.adjacent(nb[i], nb[j])) best = std::min(best, flow.local_connectivity(nb[i], nb[j], best));
  return best;
}

inline int vertex_connectivity(const LayeredGraph& g) { return vertex_connectivity(g.graph()); }
inline int vertex_connectivity(const Triangulation& t) { return vertex_connectivity(induced_graph(t.vertices(), t.edges())); }

/// True iff the graph is connected and has no bridge (iterative low-point search).
inline bool is_two_edge_connected(const Graph& g) {
  const int n = g.size();
  if (n <= 1) return true;
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  struct Frame {
    int v;
    int parent;
    std::size_t next;
  };
  int timer = 0;
  std::vector<Frame> stack{{0, -1, 0}};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& nb = g.neighbors(f.v);
    if (f.next < nb.size()) {
      const int w = nb[f.next++];
      if (w == f.parent) continue;
      if (disc[static_cast<std::size_t>(w)] >= 0) {
        low[static_cast<std::size_t>(f.v)] = std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
      } else {
        disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
        stack.push_back({w, f.v, 0});
      }
      continue;
    }
    const int v = f.v, p = f.parent;
    stack.pop_back();
    if (p >= 0) {
      if (low[static_cast<std::size_t>(v)] > disc[static_cast<std::size_t>(p)]) return false;
      low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
    }
  }
  return timer == n;
}

struct ConflictGraph {
  std::vector<Edge> edges;  // node i is edges[i]
  Graph conflicts;
};

inline ConflictGraph crossing_conflict_graph(const PointSet& ps, const EdgeSet& edges) {
  ConflictGraph cg{{edges.begin(), edges.end()}, Graph(static_cast<int>(edges.size()))};
  for (std::size_t i = 0; i < cg.edges.size(); ++i)
    for (std::size_t j = i + 1; j < cg.edges.size(); ++j)
      if (edges_cross(ps, cg.edges[i], cg.edges[j])) cg.conflicts.add_edge(static_cast<int>(i), static_cast<int>(j));
  return cg;
}

struct LayeringResult {
  std::optional<std::map<Edge, std::uint8_t>> layers;  // values 1 or 2
  std::vector<Edge> odd_cycle;                          // certificate when layers is empty
};

/// Two-colours the crossing-conflict graph by BFS; components start in layer 1.
inline LayeringResult compute_layering(const PointSet& ps, const EdgeSet& edges) {
  const ConflictGraph cg = crossing_conflict_graph(ps, edges);
  const int m = cg.conflicts.size();
  std::vector<int> colour(static_cast<std::size_t>(m), 0), parent(static_cast<std::size_t>(m), -1),
      depth(static_cast<std::size_t>(m), 0);
  for (int root = 0; root < m; ++root) {
    if (colour[static_cast<std::size_t>(root)]) continue;
    colour[static_cast<std::size_t>(root)] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y : cg.conflicts.neighbors(x)) {
        if (!colour[static_cast<std::size_t>(y)]) {
          colour[static_cast<std::size_t>(y)] = 3 - colour[static_cast<std::size_t>(x)];
          parent[static_cast<std::size_t>(y)] = x;
          depth[static_cast<std::size_t>(y)] = depth[static_cast<std::size_t>(x)] + 1;
          q.push(y);
        } else if (colour[static_cast<std::size_t>(y)] == colour[static_cast<std::size_t>(x)]) {
          // equal colours mean equal depth parity, so the two tree paths close an odd cycle
          std::vector<int> left, right;
          int a = x, b = y;
          while (depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)]) {
            left.push_back(a);
            a = parent[static_cast<std::size_t>(a)];
          }
          while (depth[static_cast<std::size_t>(b)] > depth[static_cast<std::size_t>(a)]) {
            right.push_back(b);
            b = parent[static_cast<std::size_t>(b)];
          }
          while (a != b) {
            left.push_back(a);
            right.push_back(b);
            a = parent[static_cast<std::size_t>(a)];
            b = parent[static_cast<std::size_t>(b)];
          }
          left.push_back(a);
          std::reverse(right.begin(), right.end());
          LayeringResult r;
          for (int i : left) r.odd_cycle.push_back(cg.edges[static_cast<std::size_t>(i)]);
          for (int i : right) r.odd_cycle.push_back(cg.edges[static_cast<std::size_t>(i)]);
          return r;
        }
      }
    }
  }
  std::map<Edge, std::uint8_t> layers;
  for (int i = 0; i < m; ++i)
    layers[cg.edges[static_cast<std::size_t>(i)]] = static_cast<std::uint8_t>(colour[static_cast<std::size_t>(i)]);
  return {std::move(layers), {}};
}

inline bool verify_layering(const LayeredGraph& g) {
  return is_plane(g.points(), g.layer(1)) && is_plane(g.points(), g.layer(2));
}

/// Chord: hull-to-hull edge that is not a hull edge.
struct Bichord {
  int u = 0, middle = 0, w = 0;
  std::vector<int> witnesses;  // one vertex per side (three when the middle is on the hull)
};

struct SeparatingTriangle {
  std::array<int, 3> v{};
  int inside = -1;
  int outside = -1;
};

struct CutReport {
  std::vector<Edge> chords;
  std::vector<Bichord> bichords;
  std::vector<SeparatingTriangle> separating_triangles;

  bool empty() const { return chords.empty() && bichords.empty() && separating_triangles.empty(); }
};

namespace detail {

/// Hull vertices strictly between positions i and j walking CCW.
inline std::vector<int> hull_arc(const std::vector<int>& hull, std::size_t i, std::size_t j) {
  std::vector<int> out;
  for (std::size_t k = (i + 1) % hull.size(); k != j; k = (k + 1) % hull.size()) out.push_back(hull[k]);
  return out;
}

inline std::size_t hull_pos(const std::vector<int>& hull, int v) {
  return static_cast<std::size_t>(std::find(hull.begin(), hull.end(), v) - hull.begin());
}

inline bool point_in_triangle(const PointSet& ps, const std::array<int, 3>& t, int p) {
  const int s1 = orient_sign(ps[t[0]], ps[t[1]], ps[p]);
  const int s2 = orient_sign(ps[t[1]], ps[t[2]], ps[p]);
  const int s3 = orient_sign(ps[t[2]], ps[t[0]], ps[p]);
  return s1 == s2 && s2 == s3;
}

}  // namespace detail

inline std::vector<Edge> chords_of(const Triangulation& t) {
  std::vector<Edge> out;
  for (const Edge& e : t.edges())
    if (t.is_hull_vertex(e.u) && t.is_hull_vertex(e.v) && !t.is_hull_edge(e)) out.push_back(e);
  return out;
}

/// Enumerates chords, bichords and separating triangles, each with side witnesses.
inline CutReport cut_structures(const Triangulation& t) {
  require(t.vertex_count() >= 5, "cut structures need at least 5 points");
  const PointSet& ps = t.points();
  const auto& hull = t.hull();
  CutReport rep;
  rep.chords = chords_of(t);

  for (int m : t.vertices()) {
    const bool m_on_hull = t.is_hull_vertex(m);
    std::vector<int> ends;
    for (int x : t.neighbors(m))
      if (t.is_hull_vertex(x) && !t.is_hull_edge(Edge(m, x))) ends.push_back(x);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        const int u = ends[i], w = ends[j];
        const std::size_t pu = detail::hull_pos(hull, u), pw = detail::hull_pos(hull, w);
        Bichord b{u, m, w, {}};
        if (!m_on_hull) {
          // sides: polygon u -> m -> w -> arc(w..u) and w -> m -> u -> arc(u..w)
          for (int side = 0; side < 2; ++side) {
            const int a = side == 0 ? u : w, c = side == 0 ? w : u;
            const std::size_t pa = side == 0 ? pu : pw, pc = side == 0 ? pw : pu;
            std::vector<int> arc = detail::hull_arc(hull, pc, pa);
            int witness = arc.empty() ? -1 : arc.front();
            if (witness < 0) {
              std::vector<Point> poly{ps[a], ps[m], ps[c]};
              for (int v : arc) poly.push_back(ps[v]);
              for (int v : t.vertices()) {
                if (v == u || v == m || v == w || t.is_hull_vertex(v)) continue;
                if (inside_simple_polygon(poly, ps[v])) {
                  witness = v;
                  break;
                }
              }
            }
            if (witness >= 0) b.witnesses.push_back(witness);
          }
          if (b.witnesses.size() == 2) rep.bichords.push_back(std::move(b));
        } else {
          // both path edges are chords; parts are beyond um, beyond mw, and between them
          int beyond_um = -1, beyond_mw = -1, between = -1;
          const int side_w = orient_sign(ps[u], ps[m], ps[w]);
          const int side_u = orient_sign(ps[m], ps[w], ps[u]);
          for (int v : t.vertices()) {
            if (v == u || v == m || v == w) continue;
            if (orient_sign(ps[u], ps[m], ps[v]) != side_w) {
              if (beyond_um < 0) beyond_um = v;
            } else if (orient_sign(ps[m], ps[w], ps[v]) != side_u) {
              if (beyond_mw < 0) beyond_mw = v;
            } else if (between < 0) {
              between = v;
            }
          }
          if (beyond_um >= 0 && beyond_mw >= 0 && between >= 0) {
            b.witnesses = {beyond_um, between, beyond_mw};
            rep.bichords.push_back(std::move(b));
          }
        }
      }
    }
  }

  for (const Edge& e : t.edges()) {
    for (int w : t.neighbors(e.u)) {
      if (w <= e.v || !t.has_edge(Edge(e.v, w))) continue;
      std::array<int, 3> tri{e.u, e.v, w};
      int inside = -1, outside = -1;
      for (int v : t.vertices()) {
        if (v == tri[0] || v == tri[1] || v == tri[2]) continue;
        if (detail::point_in_triangle(ps, tri, v)) {
          if (inside < 0) inside = v;
        } else if (outside < 0) {
          outside = v;
        }
      }
      if (inside >= 0 && outside >= 0) rep.separating_triangles.push_back({tri, inside, outside});
    }
  }
  return rep;
}

/// Proper crossing of a structure: no shared vertex and exactly one of its segments crossed.
inline bool properly_crosses_path(const PointSet& ps, const Edge& e, const std::vector<int>& verts, bool closed) {
  for (int v : verts)
    if (e.has(v)) return false;
  int crossings = 0;
  const std::size_t k = verts.size();
  for (std::size_t i = 0; i + 1 < k || (closed && i < k); ++i)
    crossings += edges_cross(ps, e, Edge(verts[i], verts[(i + 1) % k]));
  return crossings == 1;
}

struct AugmentationCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Crossing conditions for T plus the added edges to be 4-connected: every separating
/// triangle and bichord crossed properly at least once, every chord at least twice, and
/// by two disjoint edges when both sides of the chord hold at least two points.
inline AugmentationCheck check_4conn_augmentation(const Triangulation& t, const EdgeSet& added) {
  const PointSet& ps = t.points();
  const CutReport rep = cut_structures(t);
  AugmentationCheck res;
  auto violation = [&](std::string s) {
    res.ok = false;
    res.violations.push_back(std::move(s));
  };
  for (const auto& st : rep.separating_triangles) {
    const std::vector<int> verts(st.v.begin(), st.v.end());
    const bool hit = std::any_of(added.begin(), added.end(), [&](const Edge& e) { return properly_crosses_path(ps, e, verts, true); });
    if (!hit)
      violation("separating triangle (" + std::to_string(st.v[0]) + "," + std::to_string(st.v[1]) + "," +
                std::to_string(st.v[2]) + ") not crossed");
  }
  for (const auto& b : rep.bichords) {
    const std::vector<int> verts{b.u, b.middle, b.w};
    const bool hit = std::any_of(added.begin(), added.end(), [&](const Edge& e) { return properly_crosses_path(ps, e, verts, false); });
    if (!hit)
      violation("bichord " + std::to_string(b.u) + "-" + std::to_string(b.middle) + "-" + std::to_string(b.w) +
                " not crossed");
  }
  for (const Edge& c : rep.chords) {
    std::vector<Edge> crossing;
    for (const Edge& e : added)
      if (edges_cross(ps, e, c)) crossing.push_back(e);
    const std::string name = "chord " + std::to_string(c.u) + "-" + std::to_string(c.v);
    if (crossing.size() < 2) {
      violation(name + " crossed " + std::to_string(crossing.size()) + " times");
      continue;
    }
    int left = 0, right = 0;
    for (int v : t.vertices()) {
      if (c.has(v)) continue;
      (orientation(ps[c.u], ps[c.v], ps[v]) == Orientation::CCW ? left : right)++;
    }
    if (left >= 2 && right >= 2) {
      bool disjoint = false;
      for (std::size_t i = 0; i < crossing.size() && !disjoint; ++i)
        for (std::size_t j = i + 1; j < crossing.size() && !disjoint; ++j)
          disjoint = !crossing[i].has(crossing[j].u) && !crossing[i].has(crossing[j].v);
      if (!disjoint) violation(name + " lacks two disjoint crossing edges");
    }
  }
  return res;
}

}  // namespace biplane
