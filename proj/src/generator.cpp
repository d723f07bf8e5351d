#include "quasilattice/generator.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace quasilattice {

namespace {

struct PointHash {
  std::size_t operator()(const LatticePoint& x) const {
    std::size_t h = 1469598103934665603ull;
    for (long v : x) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

double to_double(const Rational& r) { return r.convert_to<double>(); }

// Visits every x in Z^k with |x - c|^2 <= r2 (slightly enlarged) whose first
// coordinate satisfies keep_first(x_0).
void for_each_in_ball(const Eigen::VectorXd& c, double r2,
                      const std::function<bool(long)>& keep_first,
                      const std::function<void(const long*)>& visit) {
  const Index k = c.size();
  const double budget = r2 * (1 + 1e-9) + 1e-9;
  LatticePoint x(static_cast<std::size_t>(k));
  std::function<void(Index, double)> rec = [&](Index i, double remaining) {
    const double w = std::sqrt(std::max(0.0, remaining));
    const long lo = static_cast<long>(std::ceil(c(i) - w));
    const long hi = static_cast<long>(std::floor(c(i) + w));
    for (long v = lo; v <= hi; ++v) {
      if (i == 0 && !keep_first(v)) continue;
      const double dv = static_cast<double>(v) - c(i);
      x[static_cast<std::size_t>(i)] = v;
      if (i + 1 == k)
        visit(x.data());
      else
        rec(i + 1, remaining - dv * dv);
    }
  };
  if (k > 0) rec(0, budget);
}

std::vector<PatternPoint> run_partitioned(
    int workers, const std::function<void(int, std::vector<PatternPoint>&)>& job) {
  workers = std::max(1, workers);
  std::vector<std::vector<PatternPoint>> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    job(0, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&, w] { job(w, parts[static_cast<std::size_t>(w)]); });
    for (auto& t : threads) t.join();
  }
  std::vector<PatternPoint> out;
  for (auto& p : parts)
    for (auto& q : p) out.push_back(std::move(q));
  return out;
}

std::vector<long> primes_excluding_2_and_5(int count) {
  std::vector<long> out;
  for (long n = 3; static_cast<int>(out.size()) < count; ++n) {
    bool prime = true;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime && n != 5) out.push_back(n);
  }
  return out;
}

}  // namespace

std::size_t Pattern::boundary_count() const {
  return static_cast<std::size_t>(std::count_if(
      points.begin(), points.end(), [](const PatternPoint& p) { return p.boundary; }));
}

Eigen::VectorXd Pattern::phys(std::size_t i) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  const LatticePoint& x = points[i].lattice;
  for (int j = 0; j < k; ++j)
    if (x[static_cast<std::size_t>(j)] != 0)
      out += static_cast<double>(x[static_cast<std::size_t>(j)]) *
             embedding.row(j).transpose();
  return out;
}

long Pattern::find(const LatticePoint& x) const {
  auto it = std::lower_bound(points.begin(), points.end(), x,
                             [](const PatternPoint& p, const LatticePoint& v) {
                               return p.lattice < v;
                             });
  if (it == points.end() || it->lattice != x) return -1;
  return static_cast<long>(it - points.begin());
}

void Pattern::canonicalize() {
  std::sort(points.begin(), points.end(),
            [](const PatternPoint& a, const PatternPoint& b) {
              return a.lattice < b.lattice;
            });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const PatternPoint& a, const PatternPoint& b) {
                             return a.lattice == b.lattice;
                           }),
               points.end());
}

StripScheme StripScheme::build(const ClusterSpec& cluster,
                               const GoldenVector& shift) {
  return build(cluster, build_projectors(cluster), shift);
}

StripScheme StripScheme::build(const ClusterSpec& cluster,
                               const ProjectorSet& projectors,
                               const GoldenVector& shift) {
  if (shift.size() != cluster.k) throw ShapeMismatch("shift has wrong length");
  StripScheme s;
  s.cluster = cluster;
  s.projectors = projectors;
  s.shift = shift;
  s.perp_chart = make_chart(projectors.pi_perp);
  s.window = zonotope_facets(projected_cube(s.perp_chart, shift));
  s.compiled = CompiledPolytope(s.window, s.perp_chart, true);
  return s;
}

CompiledQuadratic StripScheme::radius_test(const Rational& radius) const {
  return CompiledQuadratic(cluster.gram,
                           GoldenScalar(radius * radius) * cluster.gram(0, 0));
}

Eigen::VectorXd StripScheme::window_center() const {
  Eigen::VectorXd c(k());
  for (int i = 0; i < k(); ++i) c(i) = 0.5 + shift(i).to_double();
  return quasilattice::to_double(projectors.pi_perp) * c;
}

double StripScheme::radius_sq_internal(const Rational& radius) const {
  return (projectors.rho_sq * cluster.gram(0, 0)).to_double() *
         to_double(radius * radius);
}

Pattern StripScheme::empty_pattern(const Rational& radius) const {
  Pattern p;
  p.cluster = cluster.name;
  p.k = cluster.k;
  p.n = cluster.n;
  p.shift = shift;
  p.radius = radius;
  p.kappa = projectors.kappa();
  p.embedding = cluster.embedding ? *cluster.embedding
                                  : Eigen::MatrixXd::Zero(cluster.k, cluster.n);
  return p;
}

Membership strip_accepts(const StripScheme& s, const IntVector& x) {
  GoldenVector gx(x.size());
  for (Index i = 0; i < x.size(); ++i) gx(i) = GoldenScalar(Rational(x(i)));
  return contains(s.window, s.perp_chart.project(gx));
}

GoldenVector generic_shift(int k) {
  GoldenVector g(k);
  const auto primes = primes_excluding_2_and_5(k);
  for (int i = 0; i < k; ++i)
    g(i) = GoldenScalar(Rational(1, primes[static_cast<std::size_t>(i)]));
  return g;
}

GoldenVector zero_shift(int k) {
  return GoldenVector::Constant(k, GoldenScalar(0));
}

Pattern generate_box(const StripScheme& s, const Rational& radius, int workers) {
  Pattern out = s.empty_pattern(radius);
  const CompiledQuadratic ball = s.radius_test(radius);
  const Eigen::VectorXd c = s.window_center();
  // x = pi x + pi_perp x with pi_perp x within sqrt(k)/2 of the window center.
  const double r2 = s.radius_sq_internal(radius) + s.k() / 4.0;
  workers = std::max(1, workers);
  out.points = run_partitioned(workers, [&](int w, std::vector<PatternPoint>& part) {
    for_each_in_ball(
        c, r2,
        [&](long v) { return ((v % workers) + workers) % workers == w; },
        [&](const long* x) {
          if (!ball.within(x)) return;
          const Membership m = s.accepts(x);
          if (m == Membership::outside) return;
          part.push_back({LatticePoint(x, x + s.k()), m == Membership::boundary});
        });
  });
  out.canonicalize();
  return out;
}

std::optional<LatticePoint> find_seed(const StripScheme& s, const Rational& radius) {
  const CompiledQuadratic ball = s.radius_test(radius);
  const Eigen::VectorXd c = s.window_center();
  const double r2 = (s.radius_sq_internal(radius) + s.k() / 4.0) * (1 + 1e-9) + 1e-9;
  const int k = s.k();
  LatticePoint x(static_cast<std::size_t>(k));
  std::optional<LatticePoint> found;
  std::function<bool(int, double)> rec = [&](int i, double used) {
    for (long v = -2; v <= 2; ++v) {
      const double d = static_cast<double>(v) - c(i);
      const double u = used + d * d;
      if (u > r2) continue;
      x[static_cast<std::size_t>(i)] = v;
      if (i + 1 == k) {
        if (ball.within(x.data()) && s.accepts(x.data()) != Membership::outside) {
          found = x;
          return true;
        }
      } else if (rec(i + 1, u)) {
        return true;
      }
    }
    return false;
  };
  rec(0, 0.0);
  return found;
}

Pattern generate_bfs(const StripScheme& s, const Rational& radius,
                     std::optional<LatticePoint> seed,
                     const Rational& explore_margin) {
  Pattern out = s.empty_pattern(radius);
  const CompiledQuadratic ball = s.radius_test(radius);
  const CompiledQuadratic explore = s.radius_test(radius + explore_margin);
  if (!seed) seed = find_seed(s, radius);
  if (!seed) throw SeedError("no accepted seed in [-2,2]^k within the radius");
  if (static_cast<int>(seed->size()) != s.k()) throw SeedError("seed has wrong length");
  if (s.accepts(seed->data()) == Membership::outside)
    throw SeedError("seed is outside the strip");
  if (!explore.within(seed->data())) throw SeedError("seed is outside the search region");

  std::unordered_set<LatticePoint, PointHash> visited{*seed};
  std::deque<LatticePoint> queue{*seed};
  while (!queue.empty()) {
    LatticePoint x = std::move(queue.front());
    queue.pop_front();
    const Membership m = s.accepts(x.data());
    if (ball.within(x.data())) out.points.push_back({x, m == Membership::boundary});
    for (int i = 0; i < s.k(); ++i)
      for (int step : {1, -1}) {
        LatticePoint y = x;
        y[static_cast<std::size_t>(i)] += step;
        if (visited.count(y)) continue;
        if (!explore.within(y.data()) || s.accepts(y.data()) == Membership::outside)
          continue;
        visited.insert(y);
        queue.push_back(std::move(y));
      }
  }
  out.canonicalize();
  return out;
}

Pattern generate_baake_moody(const StripScheme& s, const ReducedScheme& r,
                             const Rational& radius, int workers) {
  Pattern out = s.empty_pattern(radius);
  const CompiledQuadratic ball = s.radius_test(radius);
  const int k = s.k();
  const IntMatrix& lb = r.L.basis();
  Eigen::MatrixXd basis(k, lb.cols());
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < lb.cols(); ++j) basis(i, j) = lb(i, j).convert_to<double>();
  const double r2_phys = s.radius_sq_internal(radius);
  const Eigen::MatrixXd pdd = quasilattice::to_double(r.projectors.pi_dprime);

  out.points = run_partitioned(workers, [&](int w, std::vector<PatternPoint>& part) {
    for (std::size_t ci = static_cast<std::size_t>(w); ci < r.cosets.size();
         ci += static_cast<std::size_t>(std::max(1, workers))) {
      const CosetSlice& slice = r.cosets[ci];
      const CompiledPolytope surface(slice.surface.hrep, r.prime_chart,
                                     slice.has_interior);
      double rs2 = 0;
      for (const auto& v : slice.surface.vertices) {
        double n2 = 0;
        for (Index i = 0; i < v.size(); ++i) n2 += std::pow(v(i).to_double(), 2);
        rs2 = std::max(rs2, n2);
      }
      Eigen::VectorXd z(k);
      for (int i = 0; i < k; ++i) z(i) = slice.z(i).convert_to<double>();
      // (pi + pi') y = y - pi'' z, bounded by the ball and the surface.
      const Eigen::VectorXd center = pdd * z - z;
      std::vector<long> zi(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) zi[static_cast<std::size_t>(i)] = slice.z(i).convert_to<long>();
      for (const auto& t : lattice_points_in_ellipsoid(basis, center, r2_phys + rs2)) {
        LatticePoint y = zi;
        for (Index j = 0; j < lb.cols(); ++j) {
          const long tj = t[static_cast<std::size_t>(j)];
          if (tj == 0) continue;
          for (int i = 0; i < k; ++i)
            if (lb(i, j) != 0)
              y[static_cast<std::size_t>(i)] += lb(i, j).convert_to<long>() * tj;
        }
        if (!ball.within(y.data())) continue;
        const Membership m = surface.test(y.data());
        if (m == Membership::outside) continue;
        part.push_back({std::move(y), m == Membership::boundary});
      }
    }
  });
  out.canonicalize();
  return out;
}

NeighborGraph neighbor_graph(const Pattern& p) {
  NeighborGraph g;
  g.degree.assign(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    LatticePoint y = p.points[i].lattice;
    for (int l = 0; l < p.k; ++l) {
      y[static_cast<std::size_t>(l)] += 1;
      const long j = p.find(y);
      y[static_cast<std::size_t>(l)] -= 1;
      if (j < 0) continue;
      g.edges.push_back({i, static_cast<std::size_t>(j), l + 1});
      ++g.degree[i];
      ++g.degree[static_cast<std::size_t>(j)];
    }
  }
  return g;
}

double max_edge_deviation(const Pattern& p, const NeighborGraph& g) {
  double worst = 0;
  for (const auto& e : g.edges) {
    const Eigen::VectorXd diff = p.phys(e.to) - p.phys(e.from);
    const Eigen::VectorXd ev = p.embedding.row(e.label - 1).transpose();
    worst = std::max(worst, (diff - ev).cwiseAbs().maxCoeff());
  }
  return worst;
}

Rational occupancy_margin(const ClusterSpec& c) {
  long m = 1;
  for (int i = 0; i < c.k; ++i)
    while (c.gram(i, i) > GoldenScalar(m * m) * c.gram(0, 0)) ++m;
  return Rational(m);
}

std::vector<std::vector<int>> index_orbits(const ClusterSpec& c) {
  std::vector<int> parent(static_cast<std::size_t>(c.k));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (const auto& g : c.generators)
    for (int j = 0; j < g.size(); ++j) {
      const int a = root(j), b = root(g.image(j));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> orbits;
  std::vector<int> slot(static_cast<std::size_t>(c.k), -1);
  for (int i = 0; i < c.k; ++i) {
    const int r = root(i);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(orbits.size());
      orbits.emplace_back();
    }
    orbits[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(i);
  }
  return orbits;
}

OccupancyStats occupancy_stats(const StripScheme& s, const Pattern& p,
                               const NeighborGraph& g, const Rational& radius) {
  if (p.radius < radius + occupancy_margin(s.cluster))
    throw std::invalid_argument(
        "occupancy statistics need the pattern generated with a margin");
  OccupancyStats st;
  st.radius = radius;
  st.histogram.assign(static_cast<std::size_t>(2 * p.k + 1), 0);
  st.shells = index_orbits(s.cluster);
  std::vector<std::size_t> shell_full(st.shells.size(), 0);
  std::size_t full = 0;
  const CompiledQuadratic ball = s.radius_test(radius);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const LatticePoint& x = p.points[i].lattice;
    if (!ball.within(x.data())) continue;
    ++st.counted;
    ++st.histogram[static_cast<std::size_t>(g.degree[i])];
    if (g.degree[i] == 2 * p.k) ++full;
    for (std::size_t sh = 0; sh < st.shells.size(); ++sh) {
      bool all = true;
      LatticePoint y = x;
      for (int l : st.shells[sh]) {
        for (int step : {1, -1}) {
          y[static_cast<std::size_t>(l)] += step;
          if (p.find(y) < 0) all = false;
          y[static_cast<std::size_t>(l)] -= step;
        }
        if (!all) break;
      }
      if (all) ++shell_full[sh];
    }
  }
  auto frac = [&](std::size_t a) {
    return st.counted == 0 ? Rational(0)
                           : Rational(BigInt(a), BigInt(st.counted));
  };
  st.fully_occupied_fraction = frac(full);
  for (auto v : shell_full) st.shell_full_fraction.push_back(frac(v));
  return st;
}

EquivalenceReport equivalence_check(const Pattern& a, const Pattern& b) {
  EquivalenceReport rep;
  bool boundary_only = true;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a.points[i].lattice < b.points[j].lattice)) {
      rep.only_first.push_back(a.points[i].lattice);
      boundary_only = boundary_only && a.points[i].boundary;
      ++i;
    } else if (i == a.size() || b.points[j].lattice < a.points[i].lattice) {
      rep.only_second.push_back(b.points[j].lattice);
      boundary_only = boundary_only && b.points[j].boundary;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  rep.equal = rep.only_first.empty() && rep.only_second.empty();
  rep.boundary_only = !rep.equal && boundary_only;
  return rep;
}

}  // namespace quasilattice

namespace quasilattice {

SymmetryReport symmetry_check(const StripScheme& s, const Rational& radius,
                              int workers) {
  const int k = s.k();
  // |pi(1/2)| in edge units, rounded up, so the centered ball fits.
  GoldenScalar ones(0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) ones += s.cluster.gram(i, j);
  long extra = 0;
  while (GoldenScalar(4 * extra * extra) * s.cluster.gram(0, 0) < ones) ++extra;
  const Pattern p = generate_box(s, radius + Rational(extra), workers);

  const CompiledQuadratic centered(s.cluster.gram,
                                   GoldenScalar(4 * radius * radius) * s.cluster.gram(0, 0));
  auto inside = [&](const LatticePoint& x) {
    std::vector<long> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = 2 * x[i] - 1;
    return centered.within(v.data());
  };
  SymmetryReport rep;
  std::vector<std::vector<long>> offsets;
  for (const auto& g : s.cluster.generators) {
    const IntVector n = g.cube_offset();
    std::vector<long> o(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) o[static_cast<std::size_t>(i)] = n(i).convert_to<long>();
    offsets.push_back(std::move(o));
  }
  for (const auto& pt : p.points) {
    if (!inside(pt.lattice)) continue;
    ++rep.checked;
    for (std::size_t gi = 0; gi < s.cluster.generators.size(); ++gi) {
      const SignedPermutation& g = s.cluster.generators[gi];
      LatticePoint y = offsets[gi];
      for (int j = 0; j < k; ++j)
        y[static_cast<std::size_t>(g.image(j))] += g.sign(j) * pt.lattice[static_cast<std::size_t>(j)];
      if (p.find(y) < 0) {
        rep.ok = false;
        rep.failures.emplace_back(static_cast<int>(gi), pt.lattice);
      }
    }
  }
  return rep;
}

}  // namespace quasilattice
