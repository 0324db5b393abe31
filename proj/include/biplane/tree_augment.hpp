#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "biplane/cells.hpp"
#include "biplane/connectivity.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/lca.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

namespace detail {

/// Leaf pairing on a rooted tree. Only the positions of leaves are read. Each pair is an
/// edge of the hull of the remaining leaves, so later pairs never cross earlier ones.
/// A pair is accepted only if every tree edge it leaves uncrossed still has remaining
/// leaves on both sides; the final two or three leaves then cross everything left.
inline EdgeSet pair_leaves(const std::vector<Point>& pos, const RootedTreeIndex& index, int root, std::vector<int> leaves) {
  const auto at = [&](int id) -> const Point& { return pos[static_cast<std::size_t>(id)]; };
  const int n = index.size();
  std::vector<int> below(static_cast<std::size_t>(n), 0);  // remaining leaves under each node
  std::vector<char> crossed(static_cast<std::size_t>(n), 0);  // edge to the parent is crossed
  auto walk_up = [&](int x, int delta) {
    for (; x >= 0; x = index.parent(x)) below[static_cast<std::size_t>(x)] += delta;
  };
  for (int x : leaves) walk_up(x, 1);
  auto separates = [&](int c, int x, int y) { return index.is_ancestor(c, x) != index.is_ancestor(c, y); };
  auto keeps_both_sides = [&](int x, int y) {
    const int rest = static_cast<int>(leaves.size()) - 2;
    for (int c = 0; c < n; ++c) {
      if (c == root || crossed[static_cast<std::size_t>(c)] || separates(c, x, y)) continue;
      const int under = below[static_cast<std::size_t>(c)] - index.is_ancestor(c, x) - index.is_ancestor(c, y);
      if (under == 0 || under == rest) return false;
    }
    return true;
  };
  auto take = [&](int x, int y, EdgeSet& out) {
    out.insert(Edge(x, y));
    for (int c = 0; c < n; ++c)
      if (c != root && separates(c, x, y)) crossed[static_cast<std::size_t>(c)] = 1;
    walk_up(x, -1);
    walk_up(y, -1);
    leaves.erase(std::find(leaves.begin(), leaves.end(), x));
    leaves.erase(std::find(leaves.begin(), leaves.end(), y));
  };

  EdgeSet out;
  std::vector<int> hull = leaves.size() > 3 ? convex_hull_by(at, leaves) : leaves;
  while (leaves.size() > 3) {
    const std::size_t h = hull.size();
    std::size_t i = 0;
    while (hull[i] == root) ++i;
    const int v = hull[i], u = hull[(i + h - 1) % h], w = hull[(i + 1) % h];
    const int uv = index.lca(u, v), vw = index.lca(v, w);
    ensure(index.is_ancestor(uv, vw) || index.is_ancestor(vw, uv), "ancestors of one leaf are not comparable");
    // position of the first vertex of the chosen hull-consecutive pair
    std::size_t first = index.is_ancestor(uv, vw) ? (i + h - 1) % h : i;
    if (!keeps_both_sides(hull[first], hull[(first + 1) % h])) {
      std::size_t k = 0;
      while (k < h && !keeps_both_sides(hull[k], hull[(k + 1) % h])) ++k;
      ensure(k < h, "no hull pair keeps every uncrossed tree edge coverable");
      first = k;
    }
    const int p = hull[(first + h - 1) % h], q = hull[(first + 2) % h];
    take(hull[first], hull[(first + 1) % h], out);
    if (leaves.size() <= 3) break;
    if (h <= 4) {
      hull = convex_hull_by(at, leaves);
      continue;
    }
    // repair the pocket between p and q left by the removed pair
    std::vector<int> chain{p, q};
    std::vector<int> pocket{p, q};
    for (int x : leaves)
      if (x != p && x != q && orientation(at(p), at(q), at(x)) == Orientation::CW) pocket.push_back(x);
    if (pocket.size() >= 3) {
      chain = convex_hull_by(at, pocket);
      std::rotate(chain.begin(), std::find(chain.begin(), chain.end(), p), chain.end());
    }
    std::vector<int> next;
    for (std::size_t k = 0; k + 2 < h; ++k) next.push_back(hull[(first + 2 + k) % h]);  // q .. p
    for (std::size_t k = 1; k < chain.size() && chain[k] != q; ++k) next.push_back(chain[k]);
    hull = std::move(next);
  }
  if (leaves.size() >= 2) out.insert(Edge(leaves[0], leaves[1]));
  if (leaves.size() == 3) out.insert(Edge(leaves[1], leaves[2]));
  return out;
}

}  // namespace detail

/// Adds ceil(m/2) pairwise noncrossing edges among the m leaves of a plane tree so that the
/// union is 2-edge-connected. The root defaults to the lowest-id non-leaf vertex.
inline EdgeSet augment_tree_2edge(const PointSet& ps, const EdgeSet& tree, std::optional<int> root = {}) {
  const int n = static_cast<int>(ps.size());
  require(n >= 2, "tree needs at least 2 vertices");
  require(static_cast<int>(tree.size()) == n - 1, "not a tree: wrong edge count");
  require(is_plane(ps, tree), "tree edges cross");
  const Graph g(n, tree);
  std::vector<int> leaves;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) == 1) leaves.push_back(v);
  int r = root.value_or(-1);
  if (r < 0) {
    r = 0;
    for (int v = n - 1; v >= 0; --v)
      if (g.degree(v) > 1) r = v;
  }
  const RootedTreeIndex index(g, r);
  for (int v = 0; v < n; ++v) require(index.reached(v), "not a tree: disconnected");
  return detail::pair_leaves(ps.points(), index, r, leaves);
}

inline EdgeSet augment_tree_2edge(const LayeredGraph& h, std::optional<int> root = {}) {
  require(h.layer(2).empty() || h.layer(1).empty(), "tree must use a single layer");
  return augment_tree_2edge(h.points(), h.edges(), root);
}

struct MinAugment3 {
  EdgeSet added;
  std::vector<int> representatives;  // one hull vertex per leaf cell
  int leaf_cells = 0;
};

/// Smallest edge set making a triangulation 3-connected. Leaf cells of the chord dual tree
/// are represented by hull points, and the dual tree's leaves are paired as above.
inline MinAugment3 min_augment_3conn_detailed(const Triangulation& t) {
  require(t.vertex_count() >= 3, "triangulation needs at least 3 points");
  MinAugment3 res;
  const auto chords = chords_of(t);
  if (chords.empty()) return res;
  const CellTree cells = build_cell_tree(t);
  const int k = static_cast<int>(cells.cells.size());
  res.leaf_cells = static_cast<int>(cells.leaves.size());

  Graph dual(k);
  for (auto [a, b] : cells.arcs) dual.add_edge(a, b);
  // inner cells keep a placeholder position; the pairing never looks at it
  std::vector<Point> pos(static_cast<std::size_t>(k));
  std::map<int, int> rep_of;
  for (int c : cells.leaves) {
    int rep = -1;
    for (int x : cells.leaf_free(c))
      if (t.is_hull_vertex(x) && (rep < 0 || x < rep)) rep = x;
    ensure(rep >= 0, "leaf cell without a hull vertex");
    rep_of[c] = rep;
    pos[static_cast<std::size_t>(c)] = t.point(rep);
    res.representatives.push_back(rep);
  }
  int root = cells.leaves.front();
  for (int c = 0; c < k; ++c)
    if (dual.degree(c) > 1) {
      root = c;
      break;
    }
  const RootedTreeIndex index(dual, root);
  for (const Edge& e : detail::pair_leaves(pos, index, root, cells.leaves))
    res.added.insert(Edge(rep_of.at(e.u), rep_of.at(e.v)));

  ensure(static_cast<int>(res.added.size()) == (res.leaf_cells + 1) / 2, "leaf pairing has the wrong size");
  for (const Edge& e : res.added) ensure(!t.has_edge(e), "representative edge already present");
  for (const Edge& c : chords) ensure(crosses_any(t.points(), c, res.added), "a chord is not crossed");
  return res;
}

inline EdgeSet min_augment_3conn(const Triangulation& t) { return min_augment_3conn_detailed(t).added; }

}  // namespace biplane
