#pragma once

// Exact planar predicates over bounded integer coordinates.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "biplane/error.hpp"

namespace biplane {

/// Coordinates are bounded by |c| <= kCoordLimit. Differences then fit in 42 bits and every
/// 2x2 determinant (and every polygon doubled area over fewer than 2^40 vertices) fits in
/// a signed 128-bit integer without overflow.
inline constexpr std::int64_t kCoordLimit = std::int64_t{1} << 40;

using Wide = __int128;

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

inline Wide cross(const Point& o, const Point& a, const Point& b) {
  return Wide(a.x - o.x) * Wide(b.y - o.y) - Wide(a.y - o.y) * Wide(b.x - o.x);
}

inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const Wide d = cross(p, q, r);
  if (d > 0) return Orientation::CCW;
  if (d < 0) return Orientation::CW;
  return Orientation::Collinear;
}

inline int orient_sign(const Point& p, const Point& q, const Point& r) {
  return static_cast<int>(orientation(p, q, r));
}

/// True iff the open segments ab and cd share exactly one point. Segments sharing an
/// endpoint never properly cross; collinear overlaps are not proper crossings.
inline bool segments_properly_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  if (a == c || a == d || b == c || b == d) return false;
  const int o1 = orient_sign(a, b, c);
  const int o2 = orient_sign(a, b, d);
  const int o3 = orient_sign(c, d, a);
  const int o4 = orient_sign(c, d, b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

/// Doubled signed area of a polygon given as a vertex cycle (positive when CCW).
inline Wide doubled_area(std::span<const Point> poly) {
  Wide sum = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    sum += Wide(a.x) * Wide(b.y) - Wide(a.y) * Wide(b.x);
  }
  return sum;
}

/// Points with stable ids (the index). Validated on construction: coordinates within
/// kCoordLimit, pairwise distinct, no three collinear.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) { validate(); }

  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  const Point& operator[](int id) const { return pts_[static_cast<std::size_t>(id)]; }
  const std::vector<Point>& points() const noexcept { return pts_; }

  /// Points restricted to `ids`, in that order. Ids of the result are positions in `ids`.
  PointSet subset(std::span<const int> ids) const {
    std::vector<Point> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back((*this)[id]);
    return PointSet(std::move(out));
  }

 private:
  void validate() const {
    for (const Point& p : pts_) {
      require(p.x >= -kCoordLimit && p.x <= kCoordLimit && p.y >= -kCoordLimit && p.y <= kCoordLimit,
              "point coordinate exceeds the supported range of +/-2^40");
    }
    std::vector<Point> sorted = pts_;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate points");
    find_collinear_triple();
  }

  void find_collinear_triple() const {
    // For each pivot, sort the other points by direction; collinear triples through the
    // pivot show up as equal consecutive directions (modulo a half-turn).
    const std::size_t n = pts_.size();
    std::vector<Point> dirs;
    for (std::size_t i = 0; i < n; ++i) {
      dirs.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        Point d{pts_[j].x - pts_[i].x, pts_[j].y - pts_[i].y};
        if (d.y < 0 || (d.y == 0 && d.x < 0)) d = Point{-d.x, -d.y};
        dirs.push_back(d);
      }
      std::sort(dirs.begin(), dirs.end(), [](const Point& a, const Point& b) {
        return Wide(a.x) * Wide(b.y) - Wide(a.y) * Wide(b.x) > 0;
      });
      for (std::size_t k = 1; k < dirs.size(); ++k) {
        const Point& a = dirs[k - 1];
        const Point& b = dirs[k];
        if (Wide(a.x) * Wide(b.y) - Wide(a.y) * Wide(b.x) == 0) {
          fail(ErrorKind::Precondition, "points are not in general position (three collinear points)");
        }
      }
    }
  }

  std::vector<Point> pts_;
};

/// Counterclockwise convex hull of the given ids, positions looked up through `pos`,
/// starting at the lexicographically smallest point. Assumes general position.
template <class Pos>
std::vector<int> convex_hull_by(const Pos& pos, std::vector<int> ids) {
  require(ids.size() >= 3, "convex hull needs at least 3 points");
  std::sort(ids.begin(), ids.end(), [&](int a, int b) { return pos(a) < pos(b); });
  std::vector<int> hull(2 * ids.size());
  std::size_t k = 0;
  for (int id : ids) {
    while (k >= 2 && orientation(pos(hull[k - 2]), pos(hull[k - 1]), pos(id)) != Orientation::CCW) --k;
    hull[k++] = id;
  }
  for (std::size_t i = ids.size() - 1, lower = k + 1; i-- > 0;) {
    const int id = ids[i];
    while (k >= lower && orientation(pos(hull[k - 2]), pos(hull[k - 1]), pos(id)) != Orientation::CCW) --k;
    hull[k++] = id;
  }
  hull.resize(k - 1);
  return hull;
}

inline std::vector<int> convex_hull(const PointSet& ps, std::vector<int> ids) {
  return convex_hull_by([&](int id) -> const Point& { return ps[id]; }, std::move(ids));
}

inline std::vector<int> all_ids(std::size_t n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

inline std::vector<int> convex_hull(const PointSet& ps) { return convex_hull(ps, all_ids(ps.size())); }

inline bool is_convex_position(const PointSet& ps) {
  require(ps.size() >= 3, "convex position test needs at least 3 points");
  return convex_hull(ps).size() == ps.size();
}

/// Strict containment in a CCW convex polygon.
inline bool strictly_inside_convex(const PointSet& ps, std::span<const int> ccw_hull, const Point& s) {
  for (std::size_t i = 0; i < ccw_hull.size(); ++i) {
    const Point& a = ps[ccw_hull[i]];
    const Point& b = ps[ccw_hull[(i + 1) % ccw_hull.size()]];
    if (orientation(a, b, s) != Orientation::CCW) return false;
  }
  return true;
}

/// True iff s lies strictly outside the closed CCW convex polygon.
inline bool strictly_outside_convex(const PointSet& ps, std::span<const int> ccw_hull, const Point& s) {
  for (std::size_t i = 0; i < ccw_hull.size(); ++i) {
    const Point& a = ps[ccw_hull[i]];
    const Point& b = ps[ccw_hull[(i + 1) % ccw_hull.size()]];
    if (orientation(a, b, s) == Orientation::CW) return true;
  }
  return false;
}

/// Exact point-in-simple-polygon test for a point not on the boundary (winding number).
inline bool inside_simple_polygon(std::span<const Point> poly, const Point& s) {
  int winding = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& a = poly[i];
    const Point& b = poly[(i + 1) % poly.size()];
    if (a.y <= s.y) {
      if (b.y > s.y && cross(a, b, s) > 0) ++winding;
    } else if (b.y <= s.y && cross(a, b, s) < 0) {
      --winding;
    }
  }
  return winding != 0;
}

/// A point s outside a convex polygon sees the CCW hull edge (a, b) when the triangle sab
/// lies outside the polygon, i.e. s is strictly on the outer side of the line ab.
inline bool sees_edge(const Point& s, const Point& a, const Point& b) {
  return orientation(a, b, s) == Orientation::CW;
}

namespace detail {

inline std::size_t hull_edge_index(const std::vector<int>& hull, int u, int v) {
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const int a = hull[i];
    const int b = hull[(i + 1) % hull.size()];
    if ((a == u && b == v) || (a == v && b == u)) return i;
  }
  fail(ErrorKind::Precondition, "edge is not a convex hull edge");
}

}  // namespace detail

/// Visibility of hull edge {u, v} of ps from an exterior point s.
inline bool point_sees_hull_edge(const Point& s, const PointSet& ps, int u, int v) {
  const std::vector<int> hull = convex_hull(ps);
  require(strictly_outside_convex(ps, hull, s), "visibility query point is not exterior to the hull");
  const std::size_t i = detail::hull_edge_index(hull, u, v);
  return sees_edge(s, ps[hull[i]], ps[hull[(i + 1) % hull.size()]]);
}

inline bool segment_sees_hull_edge(const Point& s, const Point& t, const PointSet& ps, int u, int v) {
  return point_sees_hull_edge(s, ps, u, v) && point_sees_hull_edge(t, ps, u, v);
}

namespace detail {

struct ConvexKey {
  int count = 0;
  Wide area = 0;  // doubled

  friend bool operator==(const ConvexKey&, const ConvexKey&) = default;
  friend bool operator<(const ConvexKey& a, const ConvexKey& b) {
    return a.count != b.count ? a.count < b.count : a.area < b.area;
  }
};

}  // namespace detail

/// Largest subset in convex position; ties broken by larger hull area, then by the
/// lexicographically smallest sorted id list. Returned ids are in CCW hull order.
///
/// Dynamic program per anchor (the lowest polygon vertex): candidates above the anchor are
/// sorted by angle and f(i, j) is the best convex chain anchor -> ... -> c_i -> c_j. Count and
/// doubled area are both additive over the fan triangles (anchor, c_i, c_j). All tied
/// optimal chains are enumerated at the end for the id tie-break.
inline std::vector<int> max_convex_subset(const PointSet& ps) {
  using detail::ConvexKey;
  const int n = static_cast<int>(ps.size());
  require(n >= 3, "max convex subset needs at least 3 points");

  ConvexKey best{};
  std::vector<int> best_ids;
  constexpr std::size_t kEnumerationCap = 200000;

  auto lower = [&](int a, int b) { return std::pair(ps[a].y, ps[a].x) < std::pair(ps[b].y, ps[b].x); };

  for (int anchor = 0; anchor < n; ++anchor) {
    const Point& p = ps[anchor];
    std::vector<int> cand;
    for (int q = 0; q < n; ++q)
      if (q != anchor && lower(anchor, q)) cand.push_back(q);
    const int m = static_cast<int>(cand.size());
    if (m < 2) continue;
    std::sort(cand.begin(), cand.end(), [&](int a, int b) { return cross(p, ps[a], ps[b]) > 0; });

    // state index: from in [0, m] (m means "the anchor"), to in [0, m)
    const int stride = m;
    std::vector<ConvexKey> f(static_cast<std::size_t>((m + 1) * m));
    std::vector<char> valid(f.size(), 0);
    std::vector<std::vector<int>> pred(f.size());
    auto at = [&](int from, int to) { return static_cast<std::size_t>(from * stride + to); };

    for (int j = 0; j < m; ++j) {
      f[at(m, j)] = ConvexKey{2, 0};
      valid[at(m, j)] = 1;
    }
    for (int j = 0; j < m; ++j) {
      for (int k = j + 1; k < m; ++k) {
        const Point& cj = ps[cand[j]];
        const Point& ck = ps[cand[k]];
        const Wide tri = cross(p, cj, ck);
        ConvexKey bestHere{};
        bool any = false;
        std::vector<int> preds;
        for (int i = -1; i < j; ++i) {
          const int from = i < 0 ? m : i;
          if (!valid[at(from, j)]) continue;
          const Point& ci = i < 0 ? p : ps[cand[i]];
          if (orientation(ci, cj, ck) != Orientation::CCW) continue;
          ConvexKey v = f[at(from, j)];
          v.count += 1;
          v.area += tri;
          if (!any || bestHere < v) {
            bestHere = v;
            preds.assign(1, from);
            any = true;
          } else if (v == bestHere) {
            preds.push_back(from);
          }
        }
        if (any) {
          f[at(j, k)] = bestHere;
          valid[at(j, k)] = 1;
          pred[at(j, k)] = std::move(preds);
        }
      }
    }

    // Closing states: chain ends c_i -> c_j with a left turn back into the anchor.
    ConvexKey localBest{};
    std::vector<std::pair<int, int>> closers;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (!valid[at(i, j)]) continue;
        if (orientation(ps[cand[i]], ps[cand[j]], p) != Orientation::CCW) continue;
        const ConvexKey v = f[at(i, j)];
        if (closers.empty() || localBest < v) {
          localBest = v;
          closers.assign(1, {i, j});
        } else if (v == localBest) {
          closers.emplace_back(i, j);
        }
      }
    }
    if (closers.empty() || localBest < best) continue;

    std::vector<std::vector<int>> sets;
    std::vector<int> chain;
    std::function<void(int, int)> walk = [&](int from, int to) {
      if (sets.size() >= kEnumerationCap) return;
      chain.push_back(cand[to]);
      if (from == m) {
        std::vector<int> s = chain;
        s.push_back(anchor);
        std::reverse(s.begin(), s.end());
        sets.push_back(std::move(s));
      } else {
        for (int pr : pred[at(from, to)]) walk(pr, from);
      }
      chain.pop_back();
    };
    for (auto [i, j] : closers) walk(i, j);

    for (auto& ccw : sets) {
      std::vector<int> sorted = ccw;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> bestSorted = best_ids;
      std::sort(bestSorted.begin(), bestSorted.end());
      if (best_ids.empty() || best < localBest || sorted < bestSorted) {
        best = localBest;
        best_ids = ccw;
      }
    }
  }
  ensure(!best_ids.empty(), "max convex subset found no triangle");
  return best_ids;
}

}  // namespace biplane
