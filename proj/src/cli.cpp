#include "quasilattice/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "quasilattice/render.hpp"
#include "quasilattice/serialize.hpp"

namespace quasilattice {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> cluster;
  std::optional<std::string> cluster_file;
  std::optional<std::string> shift;
  std::optional<std::string> radius;
  std::optional<std::string> mode;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<std::string> svg;
  std::optional<std::string> xyz;
  std::optional<double> point_size;
  bool no_edges = false;
  bool compare = false;
  std::optional<std::string> compare_radius;
};

struct RunConfig {
  std::string cluster = "decagon";
  std::string cluster_file;
  Json shift = "generic";
  std::string radius = "8";
  std::string mode = "box";
  int workers = 1;
  std::string out;
  std::string svg;
  std::string xyz;
  SvgOptions render;
  bool compare = false;
  std::string compare_radius;
};

std::string json_string(const Json& j, const char* key) {
  if (!j[key].is_string() && !j[key].is_number())
    throw UsageError(std::string("config field '") + key + "' must be a string");
  return j[key].is_string() ? j[key].get<std::string>() : j[key].dump();
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (f.config) {
    Json j;
    try {
      j = Json::parse(read_text(*f.config));
    } catch (const Json::parse_error& e) {
      throw UsageError("malformed config: " + std::string(e.what()));
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    try {
      if (j.contains("cluster")) c.cluster = json_string(j, "cluster");
      if (j.contains("cluster_file")) c.cluster_file = json_string(j, "cluster_file");
      if (j.contains("shift")) c.shift = j["shift"];
      if (j.contains("radius")) c.radius = json_string(j, "radius");
      if (j.contains("mode")) c.mode = json_string(j, "mode");
      if (j.contains("workers")) c.workers = j["workers"].get<int>();
      if (j.contains("out")) c.out = json_string(j, "out");
      if (j.contains("svg")) c.svg = json_string(j, "svg");
      if (j.contains("xyz")) c.xyz = json_string(j, "xyz");
      if (j.contains("point_size")) c.render.point_size = j["point_size"].get<double>();
      if (j.contains("edges")) c.render.draw_edges = j["edges"].get<bool>();
      if (j.contains("compare")) c.compare = j["compare"].get<bool>();
      if (j.contains("compare_radius")) c.compare_radius = json_string(j, "compare_radius");
    } catch (const Json::exception& e) {
      throw UsageError("malformed config: " + std::string(e.what()));
    }
  }
  if (f.cluster) {
    c.cluster = *f.cluster;
    c.cluster_file.clear();
  }
  if (f.cluster_file) c.cluster_file = *f.cluster_file;
  if (f.shift) c.shift = *f.shift;
  if (f.radius) c.radius = *f.radius;
  if (f.mode) c.mode = *f.mode;
  if (f.workers) c.workers = *f.workers;
  if (f.out) c.out = *f.out;
  if (f.svg) c.svg = *f.svg;
  if (f.xyz) c.xyz = *f.xyz;
  if (f.point_size) c.render.point_size = *f.point_size;
  if (f.no_edges) c.render.draw_edges = false;
  if (f.compare) c.compare = true;
  if (f.compare_radius) c.compare_radius = *f.compare_radius;

  static const char* modes[] = {"box", "bfs", "bm", "all"};
  if (std::find(std::begin(modes), std::end(modes), c.mode) == std::end(modes))
    throw UsageError("unknown mode '" + c.mode + "'");
  if (c.workers < 1) throw UsageError("workers must be positive");
  return c;
}

ClusterSpec load_cluster(const RunConfig& c) {
  try {
    if (!c.cluster_file.empty()) return load_cluster_file(c.cluster_file);
    return catalog(c.cluster);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

GoldenVector parse_shift(const Json& spec, int k) {
  GoldenVector g;
  try {
    if (spec.is_array()) {
      g = golden_vector_from_json(spec);
    } else if (spec.is_string()) {
      const std::string s = spec.get<std::string>();
      if (s == "generic") return generic_shift(k);
      if (s == "zero") return zero_shift(k);
      std::vector<GoldenScalar> parts;
      std::stringstream ss(s);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(GoldenScalar::parse(item));
      g.resize(static_cast<Index>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i) g(static_cast<Index>(i)) = parts[i];
    } else {
      throw UsageError("shift must be generic, zero, or a list");
    }
  } catch (const FormatError& e) {
    throw UsageError(std::string("bad shift: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad shift: ") + e.what());
  }
  if (g.size() != k)
    throw UsageError("shift has " + std::to_string(g.size()) + " entries, cluster has k = " +
                     std::to_string(k));
  return g;
}

Rational parse_radius(const std::string& text) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("bad radius '" + text + "'");
  }
  if (r <= 0) throw UsageError("radius must be positive");
  return r;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text(path, text);
}

struct Generated {
  Pattern pattern;
  Json summary;
  bool consistent = true;
};

Generated generate(const StripScheme& s, const Rational& radius, const RunConfig& c) {
  Generated g;
  if (c.mode == "box") {
    g.pattern = generate_box(s, radius, c.workers);
  } else if (c.mode == "bfs") {
    g.pattern = generate_bfs(s, radius);
  } else if (c.mode == "bm") {
    g.pattern = generate_baake_moody(s, reduce(s.projectors, s.shift), radius, c.workers);
  } else {
    g.pattern = generate_box(s, radius, c.workers);
    const Pattern bfs = generate_bfs(s, radius);
    const Pattern bm = generate_baake_moody(s, reduce(s.projectors, s.shift), radius, c.workers);
    const auto e1 = equivalence_check(g.pattern, bfs);
    const auto e2 = equivalence_check(g.pattern, bm);
    g.consistent = e1.equal && e2.equal;
    g.summary = {{"box", g.pattern.size()}, {"bfs", bfs.size()}, {"bm", bm.size()},
                 {"box_equals_bfs", e1.equal}, {"box_equals_bm", e2.equal}};
  }
  return g;
}

int cmd_catalog(const std::vector<std::string>& what, std::ostream& out) {
  if (what.empty()) throw UsageError("catalog needs 'list' or 'show <name>'");
  if (what[0] == "list" && what.size() == 1) {
    for (const auto& n : catalog_names()) out << n << '\n';
    return 0;
  }
  if (what[0] == "show" && what.size() == 2) {
    ClusterSpec c;
    try {
      c = catalog(what[1]);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    out << dump(cluster_to_json(c));
    return 0;
  }
  throw UsageError("catalog needs 'list' or 'show <name>'");
}

int cmd_project(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ClusterSpec cluster = load_cluster(c);
  const GoldenVector shift = parse_shift(c.shift, cluster.k);
  const Rational radius = parse_radius(c.radius);
  if (!c.svg.empty() && cluster.n != 2) throw UsageError("--svg needs a planar cluster");
  if (!c.xyz.empty() && cluster.n != 3) throw UsageError("--xyz needs a spatial cluster");
  const StripScheme s = StripScheme::build(cluster, shift);
  const Generated g = generate(s, radius, c);
  const NeighborGraph graph = neighbor_graph(g.pattern);
  emit(c.out, dump(pattern_to_json(g.pattern, graph)), out);
  if (!c.svg.empty()) write_text(c.svg, render_svg(g.pattern, graph, c.render));
  if (!c.xyz.empty()) write_text(c.xyz, render_xyz(g.pattern));
  if (!g.consistent) {
    err << "generators disagree: " << g.summary.dump() << '\n';
    return 1;
  }
  return 0;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  const ClusterSpec cluster = load_cluster(c);
  const GoldenVector shift = parse_shift(c.shift, cluster.k);
  const ProjectorSet p = build_projectors(cluster);
  if (!c.svg.empty() && p.s != 2) throw UsageError("--svg needs planar atomic surfaces");
  const ReducedScheme r = reduce(p, shift);
  emit(c.out, dump(reduction_to_json(cluster.name, r)), out);
  if (!c.svg.empty()) {
    std::vector<AtomicSurface> surfaces;
    for (const auto& cs : r.cosets) surfaces.push_back(cs.surface);
    write_text(c.svg, render_surfaces_svg(surfaces, c.render));
  }
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const ClusterSpec cluster = load_cluster(c);
  const GoldenVector shift = parse_shift(c.shift, cluster.k);
  const Rational radius = parse_radius(c.radius);
  const StripScheme s = StripScheme::build(cluster, shift);
  Json rep;
  rep["cluster"] = cluster.name;
  rep["gamma"] = to_json(shift);
  rep["radius"] = to_string(radius);
  bool ok = true;

  const ValidationReport algebra = check_projector_algebra(s.projectors);
  const ValidationReport inv = check_invariance(cluster, s.projectors);
  rep["projector_algebra"] = algebra.ok();
  rep["generator_invariance"] = inv.ok();
  ok = ok && algebra.ok() && inv.ok();

  const Pattern box = generate_box(s, radius, c.workers);
  const Pattern bfs = generate_bfs(s, radius);
  const Pattern bm = generate_baake_moody(s, reduce(s.projectors, shift), radius, c.workers);
  const auto e1 = equivalence_check(box, bfs);
  const auto e2 = equivalence_check(box, bm);
  rep["points"] = {{"box", box.size()}, {"bfs", bfs.size()}, {"bm", bm.size()}};
  rep["boundary_points"] = box.boundary_count();
  rep["box_equals_bfs"] = e1.equal;
  rep["box_equals_bm"] = e2.equal;
  ok = ok && e1.equal && e2.equal;

  bool sound = true;
  for (const Pattern* p : {&box, &bfs, &bm})
    for (const auto& pt : p->points) {
      IntVector x(cluster.k);
      for (int i = 0; i < cluster.k; ++i) x(i) = pt.lattice[static_cast<std::size_t>(i)];
      sound = sound && strip_accepts(s, x) != Membership::outside;
    }
  rep["soundness"] = sound;
  ok = ok && sound;

  const NeighborGraph graph = neighbor_graph(box);
  const double dev = max_edge_deviation(box, graph);
  rep["edges"] = graph.edges.size();
  if (cluster.embedding) {
    rep["max_edge_deviation"] = dev;
    ok = ok && dev <= 1e-9;
  }
  bool zero = true;
  for (Index i = 0; i < shift.size(); ++i) zero = zero && shift(i).is_zero();
  if (zero) {
    const SymmetryReport sym = symmetry_check(s, radius, c.workers);
    rep["symmetry"] = {{"checked", sym.checked}, {"ok", sym.ok}};
    ok = ok && sym.ok;
  }
  rep["summary"] = e1.equal && e2.equal ? "box = bfs = baake-moody" : "generators disagree";
  rep["ok"] = ok;
  if (c.out.empty()) {
    out << dump(rep);
  } else {
    write_text(c.out, dump(rep));
    out << rep["summary"].get<std::string>() << '\n';
  }
  return ok ? 0 : 1;
}

Json occupancy_run(const ClusterSpec& cluster, const GoldenVector& shift,
                   const Rational& radius, const RunConfig& c) {
  const StripScheme s = StripScheme::build(cluster, shift);
  const Rational outer = radius + occupancy_margin(cluster);
  const Pattern p = c.mode == "bfs" ? generate_bfs(s, outer) : generate_box(s, outer, c.workers);
  Json j = occupancy_to_json(occupancy_stats(s, p, neighbor_graph(p), radius));
  j["cluster"] = cluster.name;
  j["generated_radius"] = to_string(outer);
  j["generated_points"] = p.size();
  return j;
}

int cmd_stats(const RunConfig& c, std::ostream& out) {
  const ClusterSpec cluster = load_cluster(c);
  const GoldenVector shift = parse_shift(c.shift, cluster.k);
  const Rational radius = parse_radius(c.radius);
  Json rep;
  rep["gamma"] = to_json(shift);
  rep["occupancy"] = occupancy_run(cluster, shift, radius, c);
  if (c.compare) {
    const Rational r = c.compare_radius.empty() ? radius : parse_radius(c.compare_radius);
    RunConfig bfs = c;
    bfs.mode = "bfs";
    const ClusterSpec ico = catalog("icosahedron");
    const ClusterSpec two = two_shell(1, 1);
    rep["comparison"] = {
        {"radius", to_string(r)},
        {"icosahedron", occupancy_run(ico, generic_shift(ico.k), r, bfs)},
        {"two_shell", occupancy_run(two, generic_shift(two.k), r, bfs)}};
  }
  emit(c.out, dump(rep), out);
  return 0;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("config", f.config, "JSON config file (flags override it)");
  sub->add_option("--cluster", f.cluster, "catalog cluster name");
  sub->add_option("--cluster-file", f.cluster_file, "cluster definition JSON");
  sub->add_option("--shift", f.shift, "generic, zero, or comma-separated exact values");
  sub->add_option("--radius", f.radius, "radius in edge units (rational or decimal)");
  sub->add_option("--mode", f.mode, "box, bfs, bm, or all");
  sub->add_option("--workers", f.workers, "worker threads");
  sub->add_option("--out", f.out, "output JSON path (default stdout)");
  sub->add_option("--svg", f.svg, "SVG output path");
  sub->add_option("--xyz", f.xyz, "XYZ output path");
  sub->add_option("--point-size", f.point_size, "SVG point radius");
  sub->add_flag("--no-edges", f.no_edges, "omit edges in SVG output");
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Strip projection and Baake-Moody quasilattice generator"};
  app.name("quasilattice");
  app.require_subcommand(1);
  Flags f;
  std::vector<std::string> catalog_args;
  auto* cat = app.add_subcommand("catalog", "list or show catalog clusters");
  cat->add_option("args", catalog_args, "list | show <name>");
  auto* project = app.add_subcommand("project", "generate a pattern");
  auto* red = app.add_subcommand("reduce", "reduced scheme report");
  auto* verify = app.add_subcommand("verify", "run all generators and invariant checks");
  auto* stats = app.add_subcommand("stats", "occupancy statistics");
  for (auto* sub : {project, red, verify, stats}) add_common(sub, f);
  stats->add_flag("--compare", f.compare, "also compare two_shell(1,1) with icosahedron");
  stats->add_option("--compare-radius", f.compare_radius, "radius for the comparison");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (cat->parsed()) return cmd_catalog(catalog_args, out);
    const RunConfig c = resolve(f);
    if (project->parsed()) return cmd_project(c, out, err);
    if (red->parsed()) return cmd_reduce(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    return cmd_stats(c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const RenderError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace quasilattice
