#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "biplane/biplane.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace biplane;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = std::string(BIPLANE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("biplane_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void save_points(const std::string& name, const PointSet& ps) const {
    std::ofstream out(path(name));
    write_points(out, ps);
  }
  void save_edges(const std::string& name, const LayeredGraph& g) const {
    std::ofstream out(path(name));
    write_edge_list(out, g);
  }
  LayeredGraph load(const std::string& pts, const std::string& edges) const {
    std::ifstream pin(path(pts)), ein(path(edges));
    const PointSet ps = read_points(pin);
    return to_layered(ps, read_edge_list(ein));
  }

  fs::path dir_;
};

}  // namespace

TEST(Io, PointsRoundTripWithComments) {
  std::istringstream in("# header\n0 0\n\n5 1  # trailing comment\n-3 7\n");
  const PointSet ps = read_points(in);
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[2], (Point{-3, 7}));
  std::ostringstream out;
  write_points(out, ps);
  std::istringstream again(out.str());
  EXPECT_EQ(read_points(again).points(), ps.points());
}

TEST(Io, MalformedInputIsAPreconditionError) {
  auto kind_of = [](const std::string& text, bool edges) {
    std::istringstream in(text);
    try {
      if (edges)
        read_edge_list(in);
      else
        read_points(in);
    } catch (const Error& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  const int pre = static_cast<int>(ErrorKind::Precondition);
  EXPECT_EQ(kind_of("1 2 3\n", false), pre);
  EXPECT_EQ(kind_of("1\n", false), pre);
  EXPECT_EQ(kind_of("0 0\n1 1\n2 2\n", false), pre);  // collinear
  EXPECT_EQ(kind_of("3 1\n0 3 1\n", true), pre);
  EXPECT_EQ(kind_of("3 1\n0 1 4\n", true), pre);
  EXPECT_EQ(kind_of("3 2\n0 1 1\n", true), pre);
}

TEST(Io, EdgeListRoundTripKeepsLayers) {
  const PointSet ps = regular_polygon(6);
  LayeredGraph g(ps);
  g.add(Edge(0, 3), kLayer2);
  g.add(Edge(1, 4), kLayer1);
  g.add(Edge(0, 1), kBothLayers);
  std::ostringstream out;
  write_edge_list(out, g);
  std::istringstream in(out.str());
  const LayeredGraph back = to_layered(ps, read_edge_list(in));
  EXPECT_EQ(back.tagged_edges(), g.tagged_edges());
}

TEST(Svg, LayerStylesAndEmptyGraph) {
  const PointSet ps = regular_polygon(12);
  const LayeredGraph g = build_5conn_convex(ps);
  const std::string svg = render_svg(g);
  auto count = [&](const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t at = svg.find(needle); at != std::string::npos; at = svg.find(needle, at + 1)) ++c;
    return c;
  };
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
  EXPECT_EQ(count("<line"), g.edge_count());
  EXPECT_EQ(count("stroke-dasharray"), g.layer(2).size() - count("class=\"layer3\""));
  EXPECT_EQ(count("<circle"), 12u);
  EXPECT_EQ(count("<line"), count("/>\n") - count("<circle") - 1);  // every element closed

  const std::string empty = render_svg(LayeredGraph(ps));
  EXPECT_EQ(empty.find("<line"), std::string::npos);
  EXPECT_NE(empty.find("</svg>"), std::string::npos);
}

TEST_F(Cli, GenShapes) {
  CliRun r = run_cli("gen --shape regular 12");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  const PointSet ps = read_points(in);
  EXPECT_EQ(ps.size(), 12u);
  EXPECT_TRUE(is_convex_position(ps));

  const CliRun a = run_cli("gen --shape random 20 --seed 7");
  const CliRun b = run_cli("gen --shape random 20 --seed 7");
  const CliRun c = run_cli("gen --shape random 20 --seed 8");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);

  ASSERT_EQ(run_cli("gen --shape no5conn 3 --out " + path("c")).code, 0);
  const LayeredGraph g = load("c.pts", "c.edges");
  EXPECT_EQ(g.vertex_count(), 16);
  const auto t = Triangulation::from_edges(g.points(), g.edges());
  EXPECT_EQ(oracle::vertex_connectivity(g.graph()), 4);
  EXPECT_TRUE(cut_structures(t).empty());

  EXPECT_EQ(run_cli("gen --shape wheel 8").code, 3);  // edges need --out
  EXPECT_EQ(run_cli("gen --shape spiral 8").code, 3);
  EXPECT_EQ(run_cli("gen --shape no5conn 1 --out " + path("x")).code, 3);
}

TEST_F(Cli, BuildReportsAreRecomputed) {
  for (int n : {12, 14, 17}) {
    save_points("p.pts", regular_polygon(n));
    const CliRun r = run_cli("build convex5 " + path("p.pts") + " --format json --out " + path("p"));
    ASSERT_EQ(r.code, 0) << n;
    const auto j = nlohmann::json::parse(r.out);
    const LayeredGraph g = load("p.pts", "p.edges");
    EXPECT_EQ(j["kappa"], 5);
    EXPECT_EQ(j["kappa"], vertex_connectivity(g));
    EXPECT_EQ(j["edge_count"], g.edge_count());
    EXPECT_TRUE(j["biplane"].get<bool>());
    EXPECT_TRUE(j["violations"].empty());
  }
  save_points("p.pts", regular_polygon(13));
  EXPECT_EQ(run_cli("build convex5 " + path("p.pts")).code, 2);
  save_points("p.pts", regular_polygon(9));
  const CliRun four = run_cli("build convex4 " + path("p.pts") + " --format json");
  ASSERT_EQ(four.code, 0);
  EXPECT_EQ(nlohmann::json::parse(four.out)["kappa"], 4);
  save_points("q.pts", random_general_position(20, 3, 1000));
  EXPECT_EQ(run_cli("build convex5 " + path("q.pts")).code, 3);
}

TEST_F(Cli, BuildGeneralWritesCheckpoints) {
  auto pts = regular_polygon_points(14, 10000);
  pts.push_back({13, 7});
  pts.push_back({-211, 305});
  pts.push_back({20000, 3});
  save_points("m.pts", PointSet(pts));
  const CliRun r = run_cli("build general5 " + path("m.pts") + " --trace --format json --out " + path("m"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["kappa"], 5);
  ASSERT_EQ(j["phase_checkpoints"].size(), 4u);
  for (const auto& cp : j["phase_checkpoints"]) {
    EXPECT_TRUE(fs::exists(cp.get<std::string>()));
    std::ifstream in(cp.get<std::string>());
    const LayeredGraph g = to_layered(PointSet(pts), read_edge_list(in));
    EXPECT_TRUE(verify_layering(g));
  }
  EXPECT_TRUE(j["violations"].empty());
}

TEST_F(Cli, AugmentTargets) {
  const auto wheel = generate_wheel(9);
  save_points("w.pts", wheel.points());
  save_edges("w.edges", single_layer(wheel.points(), wheel.edges()));
  EXPECT_EQ(run_cli("augment --target 4 " + path("w.pts") + " " + path("w.edges")).code, 2);
  const auto fan = generate_fan(8);
  save_points("f.pts", fan.points());
  save_edges("f.edges", single_layer(fan.points(), fan.edges()));
  EXPECT_EQ(run_cli("augment --target 4 " + path("f.pts") + " " + path("f.edges")).code, 2);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto t = fixtures::random_triangulation(9 + static_cast<int>(seed), seed);
    if (classify(t) != TriangulationKind::Other) continue;
    save_points("t.pts", t.points());
    save_edges("t.edges", single_layer(t.points(), t.edges()));
    const CliRun r = run_cli("augment --target 4 --trace --format json " + path("t.pts") + " " + path("t.edges") + " --out " + path("t4"));
    ASSERT_EQ(r.code, 0) << seed;
    const auto j = nlohmann::json::parse(r.out);
    const LayeredGraph g = load("t.pts", "t4.edges");
    EXPECT_GE(j["kappa"].get<int>(), 4);
    EXPECT_EQ(j["kappa"], vertex_connectivity(g));
    EXPECT_EQ(g.layer(1), t.edges());
    EXPECT_TRUE(j["violations"].empty());
    EXPECT_FALSE(j["routes"].empty());

    const CliRun three = run_cli("augment --target 3 --format json " + path("t.pts") + " " + path("t.edges"));
    ASSERT_EQ(three.code, 0);
    const auto j3 = nlohmann::json::parse(three.out);
    EXPECT_EQ(j3["added"], min_augment_3conn(t).size());
    EXPECT_GE(j3["kappa"].get<int>(), 3);
  }

  const PointSet ps = random_general_position(15, 4, 1000);
  save_points("tree.pts", ps);
  save_edges("tree.edges", single_layer(ps, fixtures::random_plane_tree(ps, 4)));
  const CliRun tree = run_cli("augment --target 2 --format json " + path("tree.pts") + " " + path("tree.edges"));
  ASSERT_EQ(tree.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(tree.out)["violations"].empty());
}

TEST_F(Cli, VerifyRenderAndErrors) {
  const PointSet ps = regular_polygon(5);
  LayeredGraph k5(ps);
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.add(Edge(a, b), kLayer1);
  save_points("k.pts", ps);
  save_edges("k.edges", k5);
  const CliRun r = run_cli("verify --format json " + path("k.pts") + " " + path("k.edges"));
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["biplane"].get<bool>());

  LayeredGraph plane(ps);
  for (int a = 0; a < 5; ++a) plane.add(Edge(a, (a + 1) % 5), kLayer1);
  save_edges("c.edges", plane);
  const CliRun pv = run_cli("verify --format json " + path("k.pts") + " " + path("c.edges"));
  EXPECT_TRUE(nlohmann::json::parse(pv.out)["biplane"].get<bool>());
  EXPECT_EQ(nlohmann::json::parse(pv.out)["kappa"], 2);

  ASSERT_EQ(run_cli("render " + path("k.pts") + " " + path("k.edges") + " --out " + path("k.svg")).code, 0);
  const std::string svg = slurp(path("k.svg"));
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  const CliRun pts_only = run_cli("render " + path("k.pts"));
  EXPECT_EQ(pts_only.out.find("<line"), std::string::npos);

  EXPECT_EQ(run_cli("verify " + path("k.pts") + " " + path("missing.edges")).code, 3);
  EXPECT_EQ(run_cli("verify").code, 3);
  EXPECT_EQ(run_cli("augment --target 5 " + path("k.pts") + " " + path("k.edges")).code, 3);
}

TEST_F(Cli, IdenticalInputsGiveIdenticalBytes) {
  save_points("p.pts", regular_polygon(16));
  ASSERT_EQ(run_cli("build convex5 " + path("p.pts") + " --out " + path("a")).code, 0);
  ASSERT_EQ(run_cli("build convex5 " + path("p.pts") + " --out " + path("b")).code, 0);
  EXPECT_EQ(slurp(path("a.edges")), slurp(path("b.edges")));
  ASSERT_EQ(run_cli("render " + path("p.pts") + " " + path("a.edges") + " --out " + path("a.svg")).code, 0);
  ASSERT_EQ(run_cli("render " + path("p.pts") + " " + path("b.edges") + " --out " + path("b.svg")).code, 0);
  EXPECT_EQ(slurp(path("a.svg")), slurp(path("b.svg")));
}
