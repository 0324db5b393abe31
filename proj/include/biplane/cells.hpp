#pragma once

#include <algorithm>
#include <vector>

#include "biplane/connectivity.hpp"
#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"
#include "biplane/triangulation.hpp"

namespace biplane {

/// A convex region of the hull cut out by chords.
struct Cell {
  std::vector<int> boundary;  // CCW hull and chord vertices
  std::vector<int> interior;  // points strictly inside
  std::vector<Edge> chords;   // chords on the boundary
};

/// Cells of a triangulation and their dual tree (cells sharing a chord are adjacent).
struct CellTree {
  std::vector<Cell> cells;
  std::vector<std::pair<int, int>> arcs;  // parallel to arc_chords
  std::vector<Edge> arc_chords;
  std::vector<int> leaves;  // leaf cell indices; empty when there is a single cell

  int degree(int cell) const { return static_cast<int>(cells[static_cast<std::size_t>(cell)].chords.size()); }

  /// Vertices in the closed leaf cell, chord endpoints included.
  std::vector<int> leaf_all(int cell) const {
    const Cell& c = cells[static_cast<std::size_t>(cell)];
    std::vector<int> out = c.boundary;
    out.insert(out.end(), c.interior.begin(), c.interior.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Vertices of a leaf cell other than the endpoints of its chord.
  std::vector<int> leaf_free(int cell) const {
    const Cell& c = cells[static_cast<std::size_t>(cell)];
    require(c.chords.size() == 1, "not a leaf cell");
    std::vector<int> out;
    for (int v : leaf_all(cell))
      if (!c.chords.front().has(v)) out.push_back(v);
    return out;
  }
};

inline CellTree build_cell_tree(const Triangulation& t) {
  const PointSet& ps = t.points();
  std::vector<std::vector<int>> polys{t.hull()};
  const std::vector<Edge> chords = chords_of(t);
  for (const Edge& c : chords) {
    bool split = false;
    for (std::size_t k = 0; k < polys.size() && !split; ++k) {
      const auto& poly = polys[k];
      const auto iu = std::find(poly.begin(), poly.end(), c.u);
      const auto iv = std::find(poly.begin(), poly.end(), c.v);
      if (iu == poly.end() || iv == poly.end()) continue;
      std::size_t i = static_cast<std::size_t>(iu - poly.begin()), j = static_cast<std::size_t>(iv - poly.begin());
      if (i > j) std::swap(i, j);
      if (j - i == 1 || (i == 0 && j + 1 == poly.size())) continue;
      std::vector<int> a(poly.begin() + static_cast<std::ptrdiff_t>(i), poly.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      std::vector<int> b(poly.begin() + static_cast<std::ptrdiff_t>(j), poly.end());
      b.insert(b.end(), poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      polys[k] = std::move(a);
      polys.push_back(std::move(b));
      split = true;
    }
    ensure(split, "chord does not split any cell");
  }

  CellTree tree;
  for (auto& poly : polys) tree.cells.push_back({std::move(poly), {}, {}});
  for (int v : t.vertices()) {
    if (t.is_hull_vertex(v)) continue;
    int owner = -1;
    for (std::size_t k = 0; k < tree.cells.size(); ++k)
      if (strictly_inside_convex(ps, tree.cells[k].boundary, ps[v])) owner = static_cast<int>(k);
    ensure(owner >= 0, "interior point in no cell");
    tree.cells[static_cast<std::size_t>(owner)].interior.push_back(v);
  }
  for (const Edge& c : chords) {
    std::vector<int> sides;
    for (std::size_t k = 0; k < tree.cells.size(); ++k) {
      const auto& poly = tree.cells[k].boundary;
      for (std::size_t i = 0; i < poly.size(); ++i)
        if (Edge(poly[i], poly[(i + 1) % poly.size()]) == c) sides.push_back(static_cast<int>(k));
    }
    ensure(sides.size() == 2, "chord is not shared by exactly two cells");
    tree.arcs.emplace_back(sides[0], sides[1]);
    tree.arc_chords.push_back(c);
    tree.cells[static_cast<std::size_t>(sides[0])].chords.push_back(c);
    tree.cells[static_cast<std::size_t>(sides[1])].chords.push_back(c);
  }
  if (tree.cells.size() > 1)
    for (std::size_t k = 0; k < tree.cells.size(); ++k)
      if (tree.cells[k].chords.size() == 1) tree.leaves.push_back(static_cast<int>(k));
  return tree;
}

}  // namespace biplane
