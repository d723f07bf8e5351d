// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "quasilattice/cli.hpp"
#include "quasilattice/serialize.hpp"
#include "support.hpp"

using namespace quasilattice;
using namespace fixtures;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Patterns generated for criterion 5, reused by criterion 6.
std::vector<std::pair<std::string, Pattern>> generated;

IntMatrix w_basis() {
  IntMatrix w = IntMatrix::Constant(5, 4, BigInt(-1));
  for (Index i = 0; i < 4; ++i) w(i, i) = 4;
  return w;
}

IntMatrix sum_zero_basis() {
  IntMatrix b = IntMatrix::Zero(5, 4);
  for (Index i = 0; i < 4; ++i) {
    b(i, i) = 1;
    b(i + 1, i) = -1;
  }
  return b;
}

template <class F>
double timed(F&& f) {
  const auto t0 = Clock::now();
  f();
  return seconds_since(t0);
}

Outcome projectors() {
  Outcome o;
  double worst = 0;
  worst = std::max(worst, timed([&] {
    const ProjectorSet p = build_projectors(catalog("decagon"));
    o.require(equal(p.pi, decagon_pattern(q(2, 5), -tau_c() / q(5), -tau() / q(5))), "decagon pi");
    o.require(equal(p.pi_perp, decagon_pattern(q(3, 5), tau_c() / q(5), tau() / q(5))), "decagon pi_perp");
    o.require(equal(p.pi_prime, decagon_pattern(q(2, 5), -tau() / q(5), -tau_c() / q(5))), "decagon pi'");
    o.require(equal(p.pi_dprime, decagon_pattern(q(1, 5), q(1, 5), q(1, 5))), "decagon pi''");
  }));
  worst = std::max(worst, timed([&] {
    const ProjectorSet p = build_projectors(catalog("icosahedron"));
    o.require(equal(p.pi, icosahedron_pattern(q(1, 2), root5() / q(10))), "icosahedron pi");
    o.require(equal(p.pi_perp, icosahedron_pattern(q(1, 2), -root5() / q(10))), "icosahedron pi_perp");
  }));
  worst = std::max(worst, timed([&] {
    const ProjectorSet p = build_projectors(catalog("dodecahedron"));
    o.require(equal(p.pi, dodecahedron_pattern(q(3, 10), root5() / q(10), q(1, 10))), "dodecahedron pi");
    o.require(equal(p.pi_perp, dodecahedron_pattern(q(7, 10), -root5() / q(10), q(-1, 10))),
              "dodecahedron pi_perp");
    o.require(equal(p.pi_dprime, dodecahedron_pattern(q(2, 5), q(0), q(-1, 5))), "dodecahedron pi''");
  }));
  o.require(worst < 1.0, "each cluster under 1 s");
  char buf[64];
  std::snprintf(buf, sizeof buf, "slowest cluster %.3f s", worst);
  o.note(buf);
  return o;
}

Outcome algebra() {
  Outcome o;
  for (const auto& name : catalog_names()) {
    const ClusterSpec c = catalog(name);
    const ProjectorSet p = build_projectors(c);
    const ValidationReport a = check_projector_algebra(p);
    const ValidationReport inv = check_invariance(c, p);
    o.require(a.ok(), name + " algebra" + (a.ok() ? "" : ": " + a.issues.front()));
    o.require(inv.ok(), name + " invariance" + (inv.ok() ? "" : ": " + inv.issues.front()));
    o.require(equal(conjugate(p.pi), p.pi_prime), name + " Galois relation");
    o.require(equal(conjugate(p.pi_dprime), p.pi_dprime), name + " rational pi''");
  }
  o.note(std::to_string(catalog_names().size()) + " clusters");
  return o;
}

Outcome decagon_reduction() {
  Outcome o;
  const auto t0 = Clock::now();
  const ProjectorSet p = build_projectors(catalog("decagon"));
  const ReducedScheme r = reduce(p, zero_shift(5));
  const IntegerLatticeBasis w(w_basis(), 5);
  o.require(r.calL.lattice.contains(w) && w.contains(r.calL.lattice), "image lattice = span(w1..w4)");
  o.require(r.L == IntegerLatticeBasis(sum_zero_basis()), "L = sum-zero sublattice");
  o.require(r.index == 5, "index 5");
  std::size_t interior = 0;
  for (const auto& c : r.cosets) interior += c.has_interior ? 1 : 0;
  o.require(r.cosets.size() == 6, "6 slices");
  o.require(interior == 4, "4 slices with interior");

  // K_j is the slice through offset j/5 (1,1,1,1,1).
  auto slice = [&](long j) -> const AtomicSurface* {
    const GoldenVector off = GoldenVector::Constant(5, q(j, 5));
    for (const auto& c : r.cosets)
      if (equal(c.offset, off)) return &c.surface;
    return nullptr;
  };
  const AtomicSurface *k1 = slice(1), *k2 = slice(2), *k3 = slice(3), *k4 = slice(4);
  o.require(k1 && k2 && k3 && k4, "slices at offsets 1/5..4/5");
  if (k1 && k2 && k3 && k4) {
    const GoldenScalar base[5] = {q(2), -tau(), -tau_c(), -tau_c(), -tau()};
    std::vector<GoldenVector> expected;
    for (int s = 0; s < 5; ++s) {
      GoldenVector v(5);
      for (int i = 0; i < 5; ++i) v((i + s) % 5) = base[i] / q(5);
      expected.push_back(v);
    }
    std::vector<GoldenVector> got = k1->vertices;
    std::sort(expected.begin(), expected.end(), StructuralLess());
    std::sort(got.begin(), got.end(), StructuralLess());
    bool same = got.size() == expected.size();
    for (std::size_t i = 0; same && i < got.size(); ++i) same = equal(got[i], expected[i]);
    o.require(same, "K1 vertices");
    o.require(same_vertices(*k2, scale_surface(*k1, -tau())), "K2 = -tau K1");
    o.require(same_vertices(*k3, scale_surface(*k1, tau())), "K3 = tau K1");
    o.require(same_vertices(*k4, negate_surface(*k1)), "K4 = -K1");
  }
  const double t = seconds_since(t0);
  o.require(t < 10.0, "under 10 s");
  char buf[96];
  std::snprintf(buf, sizeof buf, "index %s, %zu slices, %zu with interior, %.2f s",
                r.index.str().c_str(), r.cosets.size(), interior, t);
  o.note(buf);
  return o;
}

Outcome degeneration() {
  Outcome o;
  const ProjectorSet p = build_projectors(catalog("icosahedron"));
  const ReducedScheme r = reduce(p, zero_shift(6));
  o.require(is_zero_matrix(p.pi_dprime), "pi'' = 0");
  o.require(p.d == 0, "dim E'' = 0");
  o.require(r.cosets.size() == 1, "single coset");
  o.require(r.calL.lattice == IntegerLatticeBasis::full(6), "image lattice = Z^6");
  o.require(r.L == IntegerLatticeBasis::full(6), "L = Z^6");
  return o;
}

Outcome equivalence() {
  Outcome o;
  struct Case {
    const char* name;
    long radius;
    double limit;
  };
  for (const Case& c : {Case{"decagon", 8, 60}, Case{"icosahedron", 5, 120}, Case{"dodecahedron", 3, 300}}) {
    const auto t0 = Clock::now();
    const ClusterSpec cl = catalog(c.name);
    const StripScheme s = StripScheme::build(cl, generic_shift(cl.k));
    const ReducedScheme red = reduce(s.projectors, s.shift);
    const Rational r(c.radius);
    const Pattern box = generate_box(s, r);
    const Pattern bfs = generate_bfs(s, r);
    const Pattern bm = generate_baake_moody(s, red, r);
    const double t = seconds_since(t0);
    o.require(box.size() > 1, std::string(c.name) + " nonempty");
    o.require(equivalence_check(box, bfs).equal, std::string(c.name) + " box = bfs");
    o.require(equivalence_check(box, bm).equal, std::string(c.name) + " box = baake-moody");
    o.require(t < c.limit, std::string(c.name) + " time limit");
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s R=%ld: %zu points, %.1f s", c.name, c.radius, box.size(), t);
    o.note(buf);
    generated.emplace_back(std::string(c.name) + " box", box);
    generated.emplace_back(std::string(c.name) + " bfs", bfs);
    generated.emplace_back(std::string(c.name) + " baake-moody", bm);
  }
  return o;
}

Outcome neighbors() {
  Outcome o;
  double worst = 0;
  std::size_t edges = 0;
  for (const auto& [name, p] : generated) {
    const NeighborGraph g = neighbor_graph(p);
    const double dev = max_edge_deviation(p, g);
    worst = std::max(worst, dev);
    edges += g.edges.size();
    o.require(dev <= 1e-9, name + " edge deviation");
  }
  o.require(!generated.empty(), "patterns available");
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu patterns, %zu edges, max deviation %.2e", generated.size(), edges, worst);
  o.note(buf);
  return o;
}

Outcome symmetry() {
  Outcome o;
  struct Case {
    const char* name;
    long radius;
  };
  for (const Case& c : {Case{"decagon", 8}, Case{"icosahedron", 4}}) {
    const ClusterSpec cl = catalog(c.name);
    const StripScheme s = StripScheme::build(cl, zero_shift(cl.k));
    const SymmetryReport rep = symmetry_check(s, Rational(c.radius));
    o.require(rep.ok && rep.checked > 0, std::string(c.name) + " invariance");
    o.note(std::string(c.name) + " R=" + std::to_string(c.radius) + ": " + std::to_string(rep.checked) +
           " points, " + std::to_string(rep.failures.size()) + " failures");
  }
  return o;
}

Outcome occupancy() {
  Outcome o;
  auto run = [](const ClusterSpec& c, const Rational& r, bool bfs) {
    const StripScheme s = StripScheme::build(c, generic_shift(c.k));
    const Rational outer = r + occupancy_margin(c);
    const Pattern p = bfs ? generate_bfs(s, outer) : generate_box(s, outer);
    return occupancy_stats(s, p, neighbor_graph(p), r);
  };
  const OccupancyStats ico = run(catalog("icosahedron"), Rational(6), false);
  const double f = ico.fully_occupied_fraction.convert_to<double>();
  o.require(ico.fully_occupied_fraction > 0 && ico.fully_occupied_fraction < Rational(1, 2),
            "icosahedron fraction in (0, 0.5)");
  char buf[160];
  std::snprintf(buf, sizeof buf, "icosahedron R=6: %s of %zu fully occupied (%.4f)",
                to_string(ico.fully_occupied_fraction).c_str(), ico.counted, f);
  o.note(buf);

  // Comparison report only; no direction is asserted.
  const Rational rc(3);
  const OccupancyStats a = run(catalog("icosahedron"), rc, true);
  const OccupancyStats b = run(two_shell(1, 1), rc, true);
  std::snprintf(buf, sizeof buf, "report R=3: icosahedron %.4f (%zu pts), two_shell(1,1) %.4f (%zu pts)",
                a.fully_occupied_fraction.convert_to<double>(), a.counted,
                b.fully_occupied_fraction.convert_to<double>(), b.counted);
  o.note(buf);
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::string dir = (std::filesystem::temp_directory_path() / "quasilattice_acceptance").string();
  std::filesystem::create_directories(dir);
  auto run = [&](const std::string& tag) {
    std::ostringstream out, err;
    const int code = cli_main({"project", "--cluster", "decagon", "--radius", "8", "--svg",
                               dir + "/" + tag + ".svg", "--out", dir + "/" + tag + ".json"},
                              out, err);
    return code;
  };
  o.require(run("a") == 0 && run("b") == 0, "project runs");
  o.require(read_text(dir + "/a.json") == read_text(dir + "/b.json"), "pattern JSON identical");
  o.require(read_text(dir + "/a.svg") == read_text(dir + "/b.svg"), "SVG identical");
  std::ostringstream r1, r2, e;
  cli_main({"reduce", "--cluster", "decagon", "--shift", "zero"}, r1, e);
  cli_main({"reduce", "--cluster", "decagon", "--shift", "zero"}, r2, e);
  o.require(!r1.str().empty() && r1.str() == r2.str(), "reduction JSON identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"projector reproduction", projectors},
      {"projector algebra", algebra},
      {"decagonal reduction", decagon_reduction},
      {"model set degeneration", degeneration},
      {"box = bfs = baake-moody", equivalence},
      {"arithmetic neighbors", neighbors},
      {"singular pattern symmetry", symmetry},
      {"occupancy", occupancy},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu %-26s %s (%.2f s) %s\n", i + 1, criteria[i].first, o.ok ? "PASS" : "FAIL",
                seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
    failed += o.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
