#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/geometry.hpp"
#include "biplane/graph.hpp"

namespace biplane {

/// Point-set text: "x y" per line, '#' starts a comment, blank lines ignored.
inline PointSet read_points(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::int64_t x = 0, y = 0;
    if (!(ls >> x)) {
      ls.clear();
      std::string rest;
      ls >> rest;
      require(rest.empty(), "line " + std::to_string(lineno) + ": expected two integers");
      continue;
    }
    require(static_cast<bool>(ls >> y), "line " + std::to_string(lineno) + ": expected two integers");
    std::string extra;
    require(!(ls >> extra), "line " + std::to_string(lineno) + ": trailing data");
    pts.push_back({x, y});
  }
  return PointSet(std::move(pts));
}

inline void write_points(std::ostream& out, const PointSet& ps) {
  for (const Point& p : ps.points()) out << p.x << ' ' << p.y << '\n';
}

/// Layered edge list: header "n m", then "u v layer" with layer 1, 2 or 3 (both).
struct EdgeList {
  int n = 0;
  std::vector<std::pair<Edge, std::uint8_t>> edges;
};

inline EdgeList read_edge_list(std::istream& in) {
  EdgeList el;
  std::size_t m = 0;
  require(static_cast<bool>(in >> el.n >> m), "edge list: missing header \"n m\"");
  require(el.n >= 0, "edge list: negative vertex count");
  for (std::size_t i = 0; i < m; ++i) {
    int u = 0, v = 0, layer = 0;
    require(static_cast<bool>(in >> u >> v >> layer), "edge list: truncated at edge " + std::to_string(i));
    require(u >= 0 && v >= 0 && u < el.n && v < el.n && u != v, "edge list: bad endpoints at edge " + std::to_string(i));
    require(layer >= 1 && layer <= 3, "edge list: layer must be 1, 2 or 3");
    el.edges.push_back({Edge(u, v), static_cast<std::uint8_t>(layer)});
  }
  return el;
}

inline LayeredGraph to_layered(const PointSet& ps, const EdgeList& el) {
  require(el.n == static_cast<int>(ps.size()), "edge list vertex count does not match the point set");
  LayeredGraph g(ps);
  for (const auto& [e, layer] : el.edges) g.add(e, layer);
  return g;
}

inline void write_edge_list(std::ostream& out, const LayeredGraph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [e, mask] : g.tagged_edges()) out << e.u << ' ' << e.v << ' ' << int{mask} << '\n';
}

inline LayeredGraph single_layer(const PointSet& ps, const EdgeSet& edges, std::uint8_t mask = kLayer1) {
  LayeredGraph g(ps);
  for (const Edge& e : edges) g.add(e, mask);
  return g;
}

}  // namespace biplane
