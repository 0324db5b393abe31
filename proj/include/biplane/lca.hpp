#pragma once

#include <bit>
#include <vector>

#include "biplane/error.hpp"
#include "biplane/graph.hpp"

namespace biplane {

/// Rooted tree with constant-time lowest common ancestor queries (Euler tour plus a
/// sparse table over first-visit depths).
class RootedTreeIndex {
 public:
  RootedTreeIndex(const Graph& tree, int root) : parent_(static_cast<std::size_t>(tree.size()), -1),
                                                  depth_(static_cast<std::size_t>(tree.size()), -1),
                                                  first_(static_cast<std::size_t>(tree.size()), -1) {
    require(root >= 0 && root < tree.size(), "root out of range");
    // iterative DFS producing the Euler tour
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    depth_[static_cast<std::size_t>(root)] = 0;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next == 0) first_[static_cast<std::size_t>(v)] = static_cast<int>(tour_.size());
      tour_.push_back(v);
      const auto& nb = tree.neighbors(v);
      while (next < nb.size() && nb[next] == parent_[static_cast<std::size_t>(v)]) ++next;
      if (next == nb.size()) {
        stack.pop_back();
        continue;
      }
      const int w = nb[next++];
      require(depth_[static_cast<std::size_t>(w)] < 0, "graph has a cycle");
      parent_[static_cast<std::size_t>(w)] = v;
      depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
      stack.emplace_back(w, 0);
    }
    const std::size_t len = tour_.size();
    table_.push_back(tour_);
    for (std::size_t k = 1; (std::size_t{1} << k) <= len; ++k) {
      const auto& prev = table_.back();
      std::vector<int> row(len - (std::size_t{1} << k) + 1);
      for (std::size_t i = 0; i < row.size(); ++i) row[i] = shallower(prev[i], prev[i + (std::size_t{1} << (k - 1))]);
      table_.push_back(std::move(row));
    }
  }

  int size() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  bool reached(int v) const { return depth(v) >= 0; }

  int lca(int u, int v) const {
    require(reached(u) && reached(v), "vertex not in the rooted tree");
    std::size_t a = static_cast<std::size_t>(first_[static_cast<std::size_t>(u)]);
    std::size_t b = static_cast<std::size_t>(first_[static_cast<std::size_t>(v)]);
    if (a > b) std::swap(a, b);
    const std::size_t k = static_cast<std::size_t>(std::bit_width(b - a + 1) - 1);
    return shallower(table_[k][a], table_[k][b + 1 - (std::size_t{1} << k)]);
  }

  /// a is an ancestor of b or equal to it.
  bool is_ancestor(int a, int b) const { return lca(a, b) == a; }

 private:
  int shallower(int a, int b) const { return depth(a) <= depth(b) ? a : b; }

  std::vector<int> parent_, depth_, first_, tour_;
  std::vector<std::vector<int>> table_;
};

}  // namespace biplane
