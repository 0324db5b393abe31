#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/geometry.hpp"

namespace biplane {

/// Undirected edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  Edge() = default;
  Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool has(int w) const { return u == w || v == w; }
  int other(int w) const { return w == u ? v : u; }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::set<Edge>;

inline bool edges_cross(const PointSet& ps, const Edge& a, const Edge& b) {
  return segments_properly_cross(ps[a.u], ps[a.v], ps[b.u], ps[b.v]);
}

inline bool crosses_any(const PointSet& ps, const Edge& e, const EdgeSet& edges) {
  return std::any_of(edges.begin(), edges.end(), [&](const Edge& f) { return edges_cross(ps, e, f); });
}

inline bool is_plane(const PointSet& ps, const EdgeSet& edges) {
  std::vector<Edge> list(edges.begin(), edges.end());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j)
      if (edges_cross(ps, list[i], list[j])) return false;
  return true;
}

/// Abstract simple graph on vertices 0..n-1 (adjacency lists kept sorted).
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

  template <class Range>
  Graph(int n, const Range& edges) : adj_(static_cast<std::size_t>(n)) {
    for (const Edge& e : edges) add_edge(e.u, e.v);
  }

  int size() const { return static_cast<int>(adj_.size()); }

  void add_edge(int a, int b) {
    require(a != b, "self loop");
    auto& la = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(la.begin(), la.end(), b);
    if (it != la.end() && *it == b) return;
    la.insert(it, b);
    auto& lb = adj_[static_cast<std::size_t>(b)];
    lb.insert(std::lower_bound(lb.begin(), lb.end(), a), a);
  }

  bool adjacent(int a, int b) const {
    const auto& la = adj_[static_cast<std::size_t>(a)];
    return std::binary_search(la.begin(), la.end(), b);
  }

  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& l : adj_) m += l.size();
    return m / 2;
  }

  EdgeSet edges() const {
    EdgeSet out;
    for (int v = 0; v < size(); ++v)
      for (int w : neighbors(v))
        if (v < w) out.insert(Edge(v, w));
    return out;
  }

 private:
  std::vector<std::vector<int>> adj_;
};

/// Layer membership bits; an edge in both triangulations carries both bits.
/// Graph on `vertices` (relabelled 0..k-1 in the given order) with the edges among them.
inline Graph induced_graph(const std::vector<int>& vertices, const EdgeSet& edges) {
  std::map<int, int> index;
  for (std::size_t i = 0; i < vertices.size(); ++i) index[vertices[i]] = static_cast<int>(i);
  Graph g(static_cast<int>(vertices.size()));
  for (const Edge& e : edges) {
    const auto a = index.find(e.u), b = index.find(e.v);
    if (a != index.end() && b != index.end()) g.add_edge(a->second, b->second);
  }
  return g;
}

enum LayerMask : std::uint8_t { kLayer1 = 1, kLayer2 = 2, kBothLayers = 3 };

/// Geometric graph whose edges carry a layer tag in {1, 2, both}.
class LayeredGraph {
 public:
  LayeredGraph() = default;
  explicit LayeredGraph(PointSet ps) : ps_(std::move(ps)) {}

  const PointSet& points() const { return ps_; }
  int vertex_count() const { return static_cast<int>(ps_.size()); }
  std::size_t edge_count() const { return layers_.size(); }

  void add(const Edge& e, std::uint8_t mask) {
    require(e.u != e.v && e.u >= 0 && e.v < vertex_count(), "edge endpoint out of range");
    require(mask >= 1 && mask <= 3, "layer mask must be 1, 2 or 3");
    layers_[e] |= mask;
  }

  void remove(const Edge& e) { layers_.erase(e); }

  /// Removes the edge from one layer only; drops it entirely when no layer is left.
  void remove_from_layer(const Edge& e, std::uint8_t mask) {
    auto it = layers_.find(e);
    if (it == layers_.end()) return;
    it->second = static_cast<std::uint8_t>(it->second & ~mask);
    if (it->second == 0) layers_.erase(it);
  }

  bool contains(const Edge& e) const { return layers_.count(e) != 0; }

  std::uint8_t mask(const Edge& e) const {
    auto it = layers_.find(e);
    return it == layers_.end() ? 0 : it->second;
  }

  bool in_layer(const Edge& e, int layer) const { return (mask(e) & (layer == 1 ? kLayer1 : kLayer2)) != 0; }

  const std::map<Edge, std::uint8_t>& tagged_edges() const { return layers_; }

  EdgeSet edges() const {
    EdgeSet out;
    for (const auto& [e, m] : layers_) out.insert(e);
    return out;
  }

  EdgeSet layer(int which) const {
    const std::uint8_t bit = which == 1 ? kLayer1 : kLayer2;
    EdgeSet out;
    for (const auto& [e, m] : layers_)
      if (m & bit) out.insert(e);
    return out;
  }

  Graph graph() const { return Graph(vertex_count(), edges()); }

 private:
  PointSet ps_;
  std::map<Edge, std::uint8_t> layers_;
};

}  // namespace biplane
