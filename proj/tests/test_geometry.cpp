#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "support.hpp"

using namespace quasilattice;
using namespace fixtures;

namespace {

std::vector<IntVector> cube_vertices(int k) {
  std::vector<IntVector> out;
  for (int bits = 0; bits < (1 << k); ++bits) {
    IntVector v(k);
    for (int i = 0; i < k; ++i) v(i) = (bits >> i) & 1;
    out.push_back(v);
  }
  return out;
}

// Every slab is attained from both sides by some cube vertex.
bool tight(const HalfspaceRep& h, const CoordinateChart& chart, const GoldenVector& shift) {
  for (const auto& s : h.slabs) {
    bool lo = false, hi = false;
    for (const auto& v : cube_vertices(static_cast<int>(chart.ambient_dimension()))) {
      const GoldenScalar x = dot(s.normal, chart.project(GoldenVector(to_golden(v) + shift)));
      lo = lo || x == s.lower;
      hi = hi || x == s.upper;
    }
    if (!lo || !hi) return false;
  }
  return true;
}

GoldenVector pentagon_vertex(int shift) {
  const GoldenScalar base[5] = {q(2), -tau(), -tau_c(), -tau_c(), -tau()};
  GoldenVector v(5);
  for (int i = 0; i < 5; ++i) v((i + shift) % 5) = base[i] / q(5);
  return v;
}

struct Decagon {
  ProjectorSet p = build_projectors(catalog("decagon"));
  CoordinateChart perp = make_chart(p.pi_perp);
  CoordinateChart prime = make_chart(p.pi_prime);
  AtomicSurface slice(long j) const {
    const GoldenVector c = mat_mul(p.pi_dprime, to_golden(ivec({j, 0, 0, 0, 0})));
    return slice_and_project(p.pi_dprime, prime, c, zero_shift(5));
  }
};

}  // namespace

TEST_CASE("decagon window facets") {
  const Decagon d;
  const GoldenVector g = zero_shift(5);
  const HalfspaceRep h = zonotope_facets(projected_cube(d.perp, g));
  CHECK(d.perp.dimension() == 3);
  CHECK(h.slabs.size() == 10);
  for (const auto& v : cube_vertices(5))
    CHECK(zonotope_contains(h, d.perp.project(to_golden(v))) != Membership::outside);
  CHECK(tight(h, d.perp, g));
  for (std::size_t a = 0; a < h.slabs.size(); ++a)
    for (std::size_t b = a + 1; b < h.slabs.size(); ++b)
      CHECK_FALSE(equal(h.slabs[a].normal, h.slabs[b].normal));
}

TEST_CASE("unit square") {
  const Zonotope z{identity<GoldenScalar>(2), zero_vector<GoldenScalar>(2)};
  const HalfspaceRep h = zonotope_facets(z);
  REQUIRE(h.slabs.size() == 2);
  std::vector<std::string> got;
  for (const auto& s : h.slabs)
    got.push_back(s.normal(0).to_string() + "," + s.normal(1).to_string() + ":" +
                  s.lower.to_string() + ".." + s.upper.to_string());
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"0,1:0..1", "1,0:0..1"});
}

TEST_CASE("icosahedral window") {
  const ProjectorSet p = build_projectors(catalog("icosahedron"));
  const CoordinateChart perp = make_chart(p.pi_perp);
  const GoldenVector g = zero_shift(6);
  const HalfspaceRep h = zonotope_facets(projected_cube(perp, g));
  // rhombic triacontahedron: 30 faces in 15 parallel pairs
  CHECK(h.slabs.size() == 15);
  for (const auto& v : cube_vertices(6))
    CHECK(zonotope_contains(h, perp.project(to_golden(v))) != Membership::outside);
  CHECK(tight(h, perp, g));
  // the projected generators positively span, so 0 and 1 are interior
  CHECK(zonotope_contains(h, perp.project(zero_vector<GoldenScalar>(6))) == Membership::inside);
  CHECK(zonotope_contains(h, perp.project(GoldenVector::Constant(6, q(1)))) == Membership::inside);

  // Float oracle from the generators alone: facet normals are cross products
  // of generator pairs, support values are sums of positive parts.
  std::vector<Eigen::Vector3d> gen;
  for (int j = 0; j < 6; ++j) {
    IntVector e = IntVector::Zero(6);
    e(j) = 1;
    gen.push_back(to_double(perp.project(to_golden(e))));
  }
  auto strictly_inside = [&](const Eigen::Vector3d& x) {
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b) {
        const Eigen::Vector3d u = gen[a].cross(gen[b]);
        double hi = 0, lo = 0;
        for (const auto& v : gen) (u.dot(v) > 0 ? hi : lo) += u.dot(v);
        if (u.dot(x) >= hi - 1e-9 || u.dot(x) <= lo + 1e-9) return false;
      }
    return true;
  };
  // exact three-valued membership agrees with the oracle on all 64 corners
  std::size_t interior = 0;
  for (const auto& v : cube_vertices(6)) {
    const GoldenVector x = perp.project(to_golden(v));
    const bool in = zonotope_contains(h, x) == Membership::inside;
    CHECK(in == strictly_inside(to_double(x)));
    interior += in ? 1 : 0;
  }
  CHECK(interior > 0);
  CHECK(interior < 64);
}

TEST_CASE("window membership") {
  const Decagon d;
  const HalfspaceRep h = zonotope_facets(projected_cube(d.perp, zero_shift(5)));
  CHECK(zonotope_contains(h, d.perp.project(zero_vector<GoldenScalar>(5))) == Membership::boundary);
  const GoldenVector center = GoldenVector::Constant(5, q(1, 2));
  CHECK(zonotope_contains(h, d.perp.project(center)) == Membership::inside);
  CHECK(zonotope_contains(h, d.perp.project(to_golden(ivec({2, 0, 0, 0, 0})))) ==
        Membership::outside);
  CHECK_THROWS_AS(zonotope_contains(h, zero_vector<GoldenScalar>(2)), ShapeMismatch);
}

TEST_CASE("pentagon slice") {
  const Decagon d;
  const AtomicSurface k1 = d.slice(1);
  CHECK(k1.dim == 2);
  CHECK(k1.has_interior());
  REQUIRE(k1.vertices.size() == 5);
  std::vector<GoldenVector> expected;
  for (int s = 0; s < 5; ++s) expected.push_back(pentagon_vertex(s));
  std::sort(expected.begin(), expected.end(), StructuralLess());
  std::vector<GoldenVector> got = k1.vertices;
  std::sort(got.begin(), got.end(), StructuralLess());
  for (std::size_t i = 0; i < 5; ++i) CHECK(equal(got[i], expected[i]));

  const AtomicSurface k0 = d.slice(0);
  CHECK(k0.vertices.size() == 1);
  CHECK(k0.dim == 0);
  CHECK_FALSE(k0.has_interior());
  CHECK(d.slice(6).empty());
}

TEST_CASE("pentagon scaling relations") {
  const Decagon d;
  const AtomicSurface k1 = d.slice(1);
  CHECK(same_vertices(scale_surface(k1, -tau()), d.slice(2)));
  CHECK(same_vertices(scale_surface(k1, tau()), d.slice(3)));
  CHECK(same_vertices(negate_surface(k1), d.slice(4)));
  CHECK(same_vertices(scale_surface(k1, q(1)), k1));
  CHECK_FALSE(same_vertices(k1, d.slice(2)));
}

TEST_CASE("surface membership") {
  const Decagon d;
  const AtomicSurface k1 = d.slice(1);
  GoldenVector bary = zero_vector<GoldenScalar>(5);
  for (const auto& v : k1.vertices) bary += v;
  bary /= q(5);
  CHECK(surface_contains(k1, d.prime.coordinates(bary)) == Membership::inside);
  CHECK(surface_contains(k1, d.prime.coordinates(pentagon_vertex(0))) == Membership::boundary);
  const GoldenVector far = pentagon_vertex(0) * -tau();
  CHECK(surface_contains(k1, d.prime.coordinates(far)) == Membership::outside);
  // degenerate surfaces never report interior points
  CHECK(surface_contains(d.slice(0), d.prime.coordinates(zero_vector<GoldenScalar>(5))) ==
        Membership::boundary);
}

TEST_CASE("extreme point filter is idempotent") {
  const Decagon d;
  const AtomicSurface k2 = d.slice(2);
  const AtomicSurface again = make_surface(k2.chart, k2.vertices);
  CHECK(same_vertices(k2, again));
  // adding interior points changes nothing
  std::vector<GoldenVector> pts = k2.vertices;
  GoldenVector mid = (k2.vertices[0] + k2.vertices[1]) / q(2);
  pts.push_back(mid);
  pts.push_back(zero_vector<GoldenScalar>(5));
  CHECK(same_vertices(make_surface(k2.chart, pts), k2));
}

TEST_CASE("dodecahedron slice is solid") {
  const ProjectorSet p = build_projectors(catalog("dodecahedron"));
  const CoordinateChart prime = make_chart(p.pi_prime);
  const IntVector e1 = ivec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  const GoldenVector c = mat_mul(p.pi_dprime, to_golden(e1));
  const AtomicSurface s = slice_and_project(p.pi_dprime, prime, c, zero_shift(10));
  CHECK(s.dim == 3);
  CHECK(s.has_interior());
  // every cube point on the slice projects into the surface
  for (const auto& v : cube_vertices(10)) {
    const GoldenVector gv = to_golden(v);
    if (!equal(GoldenVector(mat_mul(p.pi_dprime, gv)), c)) continue;
    CHECK(surface_contains(s, prime.project(gv)) != Membership::outside);
  }
}

TEST_CASE("slice is equivariant under coordinate permutations") {
  const ProjectorSet p = build_projectors(catalog("dodecahedron"));
  const SignedPermutation a = catalog("dodecahedron").generators[0];
  REQUIRE(std::all_of(a.signs().begin(), a.signs().end(), [](int s) { return s == 1; }));
  const GoldenVector x = to_golden(ivec({1, 1, 0, 0, 0, 0, 1, 0, 0, 0}));
  const GoldenVector c = mat_mul(p.pi_dprime, x);
  std::vector<GoldenVector> lhs;
  for (const auto& v : cube_slice_vertices(p.pi_dprime, c, zero_shift(10))) lhs.push_back(a.apply(v));
  std::vector<GoldenVector> rhs = cube_slice_vertices(p.pi_dprime, a.apply(c), zero_shift(10));
  std::sort(lhs.begin(), lhs.end(), StructuralLess());
  std::sort(rhs.begin(), rhs.end(), StructuralLess());
  REQUIRE(lhs.size() == rhs.size());
  CHECK(!lhs.empty());
  for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(equal(lhs[i], rhs[i]));
}

TEST_CASE("solid surfaces have full dimension") {
  const ProjectorSet p = build_projectors(catalog("dodecahedron"));
  const ReducedScheme r = reduce(p, zero_shift(10));
  for (const auto& c : r.cosets)
    if (c.has_interior) CHECK(c.surface.dim == p.s);
}
