#include <gtest/gtest.h>

#include <random>

#include "biplane/connectivity.hpp"
#include "biplane/generators.hpp"
#include "biplane/triangulation.hpp"
#include "oracles.hpp"

using namespace biplane;

namespace {

Triangulation square_with_diagonal() {
  return Triangulation::from_edges(PointSet({{0, 0}, {4, 0}, {4, 4}, {0, 4}}),
                                   {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2)});
}

/// Independent face check: faces recovered from scratch must agree with the incremental ones.
void expect_consistent(const Triangulation& t) {
  const Triangulation rebuilt = Triangulation::from_edges(t.shared_points(), t.vertices(), t.edges());
  EXPECT_EQ(rebuilt.triangles(), t.triangles());
  const int n = t.vertex_count();
  EXPECT_EQ(static_cast<int>(t.edges().size()), 3 * n - 3 - static_cast<int>(t.hull().size()));
  EXPECT_EQ(static_cast<int>(t.triangles().size()), 2 * n - 2 - static_cast<int>(t.hull().size()));
}

}  // namespace

TEST(Triangulate, ThreePoints) {
  const auto t = triangulate(PointSet({{0, 0}, {5, 1}, {2, 7}}));
  EXPECT_EQ(t.edges().size(), 3u);
  EXPECT_EQ(t.triangles().size(), 1u);
}

TEST(Triangulate, ConvexPolygonEdgeCount) {
  for (int n = 4; n <= 20; ++n) EXPECT_EQ(static_cast<int>(triangulate(regular_polygon(n)).edges().size()), 2 * n - 3);
}

TEST(Triangulate, RandomSetsPassInvariantSuite) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PointSet ps = random_general_position(9, seed, 500);
    const Triangulation t = triangulate(ps);
    EXPECT_NO_THROW(t.validate());
    EXPECT_TRUE(is_plane(ps, t.edges()));
    expect_consistent(t);
  }
}

TEST(Triangulate, DeterministicOutput) {
  const PointSet ps = random_general_position(30, 5, 10000);
  EXPECT_EQ(triangulate(ps).edges(), triangulate(ps).edges());
}

TEST(FromEdges, RejectsNonTriangulations) {
  const PointSet sq({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  EXPECT_THROW(Triangulation::from_edges(sq, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)}), Error);
  EXPECT_THROW(Triangulation::from_edges(sq, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 2), Edge(1, 3)}),
               Error);
}

TEST(QuadOfEdge, SquareDiagonal) {
  const auto t = square_with_diagonal();
  const Quad q = t.quad_of_edge(Edge(0, 2));
  EXPECT_EQ(std::set<int>(q.ccw.begin(), q.ccw.end()), (std::set<int>{0, 1, 2, 3}));
  EXPECT_EQ(q.other_diagonal(), Edge(1, 3));
  EXPECT_THROW(t.quad_of_edge(Edge(0, 1)), Error);
}

TEST(QuadOfEdge, TrianglesPartitionQuadArea) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Triangulation t = triangulate(random_general_position(12, seed, 1000));
    const PointSet& ps = t.points();
    for (const Edge& e : t.edges()) {
      if (t.is_hull_edge(e)) continue;
      const Quad q = t.quad_of_edge(e);
      const Wide t1 = cross(ps[q.ccw[0]], ps[q.ccw[1]], ps[q.ccw[2]]);
      const Wide t2 = cross(ps[q.ccw[2]], ps[q.ccw[3]], ps[q.ccw[0]]);
      EXPECT_GT(t1, 0);
      EXPECT_GT(t2, 0);
      std::vector<Point> poly;
      for (int v : q.ccw) poly.push_back(ps[v]);
      EXPECT_EQ(doubled_area(poly), t1 + t2);
    }
  }
}

TEST(Flip, SquareDiagonalAndInvolution) {
  auto t = square_with_diagonal();
  EXPECT_TRUE(t.is_flippable(Edge(0, 2)));
  EXPECT_TRUE(t.is_flippable(Edge(2, 0)));
  EXPECT_FALSE(t.is_flippable(Edge(0, 1)));
  const auto before = t.edges();
  EXPECT_EQ(t.flip(Edge(0, 2)), Edge(1, 3));
  EXPECT_TRUE(t.has_edge(Edge(1, 3)));
  t.flip(Edge(1, 3));
  EXPECT_EQ(t.edges(), before);
}

TEST(Flip, ReflexQuadIsNotFlippable) {
  // (1,1) sits inside triangle 0,1,2; the edge 1-3 has a reflex quadrilateral
  const PointSet ps({{0, 0}, {6, 0}, {0, 6}, {1, 1}});
  const auto t = Triangulation::from_edges(ps, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(0, 3), Edge(1, 3), Edge(2, 3)});
  for (const Edge& e : t.edges()) EXPECT_FALSE(t.is_flippable(e));
  EXPECT_THROW(auto c = t; c.flip(Edge(1, 3)), Error);
}

TEST(Flip, RandomFlipSequencesKeepInvariants) {
  std::mt19937_64 rng(42);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Triangulation t = triangulate(random_general_position(15, seed, 2000));
    for (int step = 0; step < 40; ++step) {
      std::vector<Edge> flippable;
      for (const Edge& e : t.edges())
        if (t.is_flippable(e)) flippable.push_back(e);
      ASSERT_FALSE(flippable.empty());
      const Edge e = flippable[rng() % flippable.size()];
      const auto before = t.edges();
      const Edge f = t.flip(e);
      std::vector<Edge> diff;
      std::set_symmetric_difference(before.begin(), before.end(), t.edges().begin(), t.edges().end(), std::back_inserter(diff));
      EXPECT_EQ(diff.size(), 2u);
      EXPECT_FALSE(t.has_edge(e));
      EXPECT_TRUE(t.has_edge(f));
      t.validate();
      expect_consistent(t);
    }
  }
}

TEST(InsertInFace, SplitsTriangle) {
  auto ps = std::make_shared<const PointSet>(std::vector<Point>{{0, 0}, {10, 0}, {0, 10}, {2, 3}});
  auto t = triangulate(ps, {0, 1, 2});
  const auto face = t.locate((*ps)[3]);
  ASSERT_TRUE(face.has_value());
  t.insert_in_face(3, *face);
  EXPECT_EQ(t.edges().size(), 6u);
  t.validate();
  expect_consistent(t);
}

TEST(Classify, WheelFanOther) {
  const PointSet sq({{0, 0}, {4, 0}, {4, 4}, {0, 4}, {1, 2}});
  const auto wheel = Triangulation::from_edges(
      sq, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3), Edge(0, 4), Edge(1, 4), Edge(2, 4), Edge(3, 4)});
  EXPECT_EQ(classify(wheel), TriangulationKind::Wheel);

  const auto pent = regular_polygon(5);
  const auto fan = Triangulation::from_edges(pent, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 4), Edge(0, 4), Edge(0, 2), Edge(0, 3)});
  EXPECT_EQ(classify(fan), TriangulationKind::Fan);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto t = triangulate(random_general_position(10, seed, 1000));
    if (static_cast<int>(t.hull().size()) <= t.vertex_count() - 2) {
      EXPECT_EQ(classify(t), TriangulationKind::Other);
    }
  }
  for (int n = 4; n <= 12; ++n) {
    EXPECT_EQ(classify(generate_wheel(n)), TriangulationKind::Wheel);
    EXPECT_EQ(classify(generate_fan(n)), TriangulationKind::Fan);
  }
}

TEST(Saturate, ConvexPositionIsPlanar) {
  for (int n = 4; n <= 16; ++n) {
    const PointSet ps = regular_polygon(n);
    const auto g = saturate_to_maximal_biplane(ps);
    EXPECT_TRUE(verify_layering(g));
    EXPECT_LE(static_cast<int>(g.edge_count()), 3 * n - 6);
  }
}

TEST(Saturate, ThreePointsBothLayersEqual) {
  const auto g = saturate_to_maximal_biplane(PointSet({{0, 0}, {5, 1}, {2, 7}}));
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.layer(1), g.layer(2));
}

TEST(Saturate, RandomSetsBoundAndStructure) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 8 + static_cast<int>(seed % 12);
    const PointSet ps = random_general_position(n, seed, 5000);
    const auto g = saturate_to_maximal_biplane(ps);
    EXPECT_LE(static_cast<int>(g.edge_count()), 6 * n - 18);
    EXPECT_TRUE(verify_layering(g));
    EXPECT_NO_THROW(Triangulation::from_edges(ps, g.layer(1)));
    EXPECT_NO_THROW(Triangulation::from_edges(ps, g.layer(2)));
    EXPECT_EQ(g.layer(1), triangulate(ps).edges());
  }
}
