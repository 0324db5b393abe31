#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biplane/biplane.hpp"

using namespace biplane;
using nlohmann::json;

namespace {

struct RunReport {
  std::string command;
  int n = 0;
  int kappa = 0;
  bool biplane = false;
  bool layering_valid = false;
  std::size_t edge_count = 0;
  std::optional<std::size_t> added;
  std::vector<std::string> routes;
  std::vector<std::string> phase_checkpoints;
  std::vector<std::string> violations;
};

struct Options {
  std::string format = "text";
  std::string out;
  bool trace = false;
};

PointSet load_points(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open point file " + path);
  return read_points(in);
}

LayeredGraph load_graph(const PointSet& ps, const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open edge file " + path);
  return to_layered(ps, read_edge_list(in));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), "cannot write " + path);
  out << text;
}

std::string edge_text(const LayeredGraph& g) {
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

std::string point_text(const PointSet& ps) {
  std::ostringstream s;
  write_points(s, ps);
  return s.str();
}

/// Every field is recomputed from the graph itself.
RunReport verify(const std::string& command, const LayeredGraph& g) {
  RunReport r;
  r.command = command;
  r.n = g.vertex_count();
  r.edge_count = g.edge_count();
  r.kappa = r.n > 0 ? vertex_connectivity(g) : 0;
  r.layering_valid = verify_layering(g);
  r.biplane = r.layering_valid || compute_layering(g.points(), g.edges()).layers.has_value();
  if (!r.layering_valid) r.violations.push_back("stored layers contain crossing edges");
  if (!r.biplane) r.violations.push_back("crossing conflict graph is not bipartite");
  if (r.biplane && r.n >= 8 && static_cast<long>(r.edge_count) > 6L * r.n - 18)
    r.violations.push_back("edge count exceeds 6n - 18");
  return r;
}

void print_report(const RunReport& r, const Options& opt) {
  if (opt.format == "json") {
    json j{{"command", r.command},   {"n", r.n},
           {"kappa", r.kappa},       {"biplane", r.biplane},
           {"layering_valid", r.layering_valid},
           {"edge_count", r.edge_count},
           {"phase_checkpoints", r.phase_checkpoints},
           {"violations", r.violations}};
    if (r.added) j["added"] = *r.added;
    if (!r.routes.empty()) j["routes"] = r.routes;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "command: " << r.command << '\n'
            << "n: " << r.n << '\n'
            << "kappa: " << r.kappa << '\n'
            << "biplane: " << (r.biplane ? "true" : "false") << '\n'
            << "layering_valid: " << (r.layering_valid ? "true" : "false") << '\n'
            << "edge_count: " << r.edge_count << '\n';
  if (r.added) std::cout << "added: " << *r.added << '\n';
  for (const auto& s : r.routes) std::cout << "route: " << s << '\n';
  for (const auto& s : r.phase_checkpoints) std::cout << "checkpoint: " << s << '\n';
  if (r.violations.empty()) std::cout << "violations: none\n";
  for (const auto& s : r.violations) std::cout << "violation: " << s << '\n';
}

void cmd_gen(const std::string& shape, int size, std::uint64_t seed, std::int64_t range, std::int64_t radius,
             const Options& opt) {
  std::optional<Triangulation> t;
  PointSet ps;
  if (shape == "regular") {
    ps = regular_polygon(size, radius);
  } else if (shape == "random") {
    require(size >= 1, "random point set needs at least one point");
    ps = random_general_position(size, seed, range);
  } else if (shape == "wheel") {
    t = generate_wheel(size);
  } else if (shape == "fan") {
    t = generate_fan(size);
  } else if (shape == "no5conn") {
    t = generate_no5conn_counterexample(size);
  } else {
    fail(ErrorKind::Precondition, "unknown shape " + shape);
  }
  if (t) ps = t->points();
  if (opt.out.empty()) {
    require(!t, "shape " + shape + " produces edges too; pass --out");
    std::cout << point_text(ps);
    return;
  }
  write_file(opt.out + ".pts", point_text(ps));
  if (t) write_file(opt.out + ".edges", edge_text(single_layer(ps, t->edges())));
  if (opt.format == "json") {
    json j{{"command", "gen"}, {"shape", shape}, {"n", ps.size()}, {"points", opt.out + ".pts"}};
    if (t) j["edges"] = opt.out + ".edges";
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "wrote " << opt.out << ".pts (" << ps.size() << " points)\n";
    if (t) std::cout << "wrote " << opt.out << ".edges (" << t->edges().size() << " edges)\n";
  }
}

void cmd_build(const std::string& mode, const std::string& points, const Options& opt) {
  const PointSet ps = load_points(points);
  LayeredGraph g;
  std::vector<std::string> checkpoints;
  int target = 5;
  if (mode == "convex5") {
    g = build_5conn_convex(ps);
  } else if (mode == "convex4") {
    g = build_4conn_convex(ps);
    target = 4;
  } else if (mode == "general5") {
    InsertionObserver observe;
    std::vector<int> step_kappa;
    observe = [&](const InsertionState& st) {
      step_kappa.push_back(st.connectivity());
      if (opt.trace && !opt.out.empty()) {
        char name[32];
        std::snprintf(name, sizeof name, ".step%03zu.edges", checkpoints.size());
        write_file(opt.out + name, edge_text(st.graph));
        checkpoints.push_back(opt.out + name);
      }
    };
    const GeneralBuild b = build_5conn_general(ps, observe);
    g = b.graph;
    RunReport r = verify("build", g);
    for (std::size_t i = 0; i < step_kappa.size(); ++i)
      if (step_kappa[i] < 5) r.violations.push_back("step " + std::to_string(i) + " has kappa " + std::to_string(step_kappa[i]));
    if (opt.trace)
      for (const auto& s : b.steps) r.routes.push_back(s.phase + ": " + s.route);
    r.phase_checkpoints = checkpoints;
    if (r.kappa < 5) r.violations.push_back("expected kappa 5");
    if (!opt.out.empty()) write_file(opt.out + ".edges", edge_text(g));
    print_report(r, opt);
    return;
  } else {
    fail(ErrorKind::Precondition, "unknown build mode " + mode);
  }
  RunReport r = verify("build", g);
  if (r.kappa < target) r.violations.push_back("expected kappa " + std::to_string(target));
  if (!opt.out.empty()) write_file(opt.out + ".edges", edge_text(g));
  print_report(r, opt);
}

void cmd_augment(int target, const std::string& points, const std::string& edges, const Options& opt) {
  const PointSet ps = load_points(points);
  const LayeredGraph in = load_graph(ps, edges);
  require(in.layer(1).empty() || in.layer(2).empty(), "input must use a single layer");
  const EdgeSet base = in.edges();
  EdgeSet added;
  std::vector<std::string> routes, extra;
  if (target == 2) {
    added = augment_tree_2edge(ps, base);
    if (!is_two_edge_connected(Graph(static_cast<int>(ps.size()), [&] {
          EdgeSet all = base;
          all.insert(added.begin(), added.end());
          return all;
        }())))
      extra.push_back("union is not 2-edge-connected");
  } else if (target == 3 || target == 4) {
    const Triangulation t = Triangulation::from_edges(ps, base);
    if (target == 3) {
      added = min_augment_3conn(t);
      for (const Edge& c : chords_of(t))
        if (!crosses_any(ps, c, added)) extra.push_back("chord " + std::to_string(c.u) + "-" + std::to_string(c.v) + " is not crossed");
    } else {
      const Augmentation a = augment_to_4conn_traced(t);
      added = a.added;
      routes = a.routes;
      const auto check = check_4conn_augmentation(t, added);
      extra.insert(extra.end(), check.violations.begin(), check.violations.end());
    }
  } else {
    fail(ErrorKind::Precondition, "target must be 2, 3 or 4");
  }
  LayeredGraph g(ps);
  for (const Edge& e : base) g.add(e, kLayer1);
  for (const Edge& e : added) g.add(e, kLayer2);
  RunReport r = verify("augment", g);
  r.added = added.size();
  if (opt.trace) r.routes = routes;
  r.violations.insert(r.violations.end(), extra.begin(), extra.end());
  if (target >= 3 && r.kappa < target) r.violations.push_back("expected kappa " + std::to_string(target));
  if (!opt.out.empty()) write_file(opt.out + ".edges", edge_text(g));
  print_report(r, opt);
}

void cmd_verify(const std::string& points, const std::string& edges, const Options& opt) {
  const PointSet ps = load_points(points);
  print_report(verify("verify", load_graph(ps, edges)), opt);
}

void cmd_render(const std::string& points, const std::string& edges, bool labels, const Options& opt) {
  const PointSet ps = load_points(points);
  const LayeredGraph g = edges.empty() ? LayeredGraph(ps) : load_graph(ps, edges);
  SvgStyle style;
  style.labels = labels;
  const std::string svg = render_svg(g, style);
  if (opt.out.empty())
    std::cout << svg;
  else
    write_file(opt.out, svg);
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Impossible: return 2;
    case ErrorKind::Precondition: return 3;
    case ErrorKind::Internal: return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biplane graph construction and augmentation"};
  app.require_subcommand(1);
  Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", opt.out, "Output path or prefix");
    sub->add_flag("--trace", opt.trace, "Record routes and per-step checkpoints");
  };

  std::string shape, mode, points, edges;
  int size = 0, target = 4;
  std::uint64_t seed = 0;
  std::int64_t range = 10'000, radius = kDefaultRadius;
  bool labels = false;

  auto* gen = app.add_subcommand("gen", "Generate a point set (and a triangulation for wheel, fan, no5conn)");
  gen->add_option("--shape", shape, "regular, random, wheel, fan or no5conn")
      ->required()
      ->check(CLI::IsMember({"regular", "random", "wheel", "fan", "no5conn"}));
  gen->add_option("size", size, "Number of points (k for no5conn)")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--range", range, "Coordinate range for random points");
  gen->add_option("--radius", radius, "Radius for regular polygons");
  common(gen);

  auto* build = app.add_subcommand("build", "Build a 4- or 5-connected biplane graph");
  build->add_option("mode", mode, "convex4, convex5 or general5")
      ->required()
      ->check(CLI::IsMember({"convex4", "convex5", "general5"}));
  build->add_option("points", points, "Point file")->required();
  build->add_option("--seed", seed, "Accepted for uniformity; construction is deterministic");
  common(build);

  auto* augment = app.add_subcommand("augment", "Add a second layer to a plane tree or triangulation");
  augment->add_option("--target", target, "2 (tree), 3 or 4")->check(CLI::IsMember({2, 3, 4}));
  augment->add_option("points", points, "Point file")->required();
  augment->add_option("edges", edges, "Single-layer edge file")->required();
  augment->add_option("--seed", seed, "Accepted for uniformity; augmentation is deterministic");
  common(augment);

  auto* ver = app.add_subcommand("verify", "Report connectivity and layering of a layered graph");
  ver->add_option("points", points, "Point file")->required();
  ver->add_option("edges", edges, "Edge file")->required();
  common(ver);

  auto* render = app.add_subcommand("render", "Draw a layered graph as SVG");
  render->add_option("points", points, "Point file")->required();
  render->add_option("edges", edges, "Edge file");
  render->add_flag("--labels", labels, "Label vertices with their ids");
  common(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*gen) cmd_gen(shape, size, seed, range, radius, opt);
    else if (*build) cmd_build(mode, points, opt);
    else if (*augment) cmd_augment(target, points, edges, opt);
    else if (*ver) cmd_verify(points, edges, opt);
    else if (*render) cmd_render(points, edges, labels, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
