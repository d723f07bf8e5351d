#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"

using namespace quasilattice;
using namespace fixtures;

TEST_CASE("decagon projectors") {
  const ProjectorSet p = build_projectors(catalog("decagon"));
  CHECK(equal(p.pi, decagon_pattern(q(2, 5), -tau_c() / q(5), -tau() / q(5))));
  CHECK(equal(p.pi_perp, decagon_pattern(q(3, 5), tau_c() / q(5), tau() / q(5))));
  CHECK(equal(p.pi_prime, decagon_pattern(q(2, 5), -tau() / q(5), -tau_c() / q(5))));
  CHECK(equal(p.pi_dprime, decagon_pattern(q(1, 5), q(1, 5), q(1, 5))));
  CHECK(p.rho_sq == q(2, 5));
  CHECK(p.kappa_sq == q(5, 2));
  CHECK((p.n == 2 && p.s == 2 && p.d == 1));
}

TEST_CASE("icosahedron projectors") {
  const ProjectorSet p = build_projectors(catalog("icosahedron"));
  CHECK(equal(p.pi, icosahedron_pattern(q(1, 2), root5() / q(10))));
  CHECK(equal(p.pi_perp, icosahedron_pattern(q(1, 2), -root5() / q(10))));
  CHECK(equal(p.pi_prime, p.pi_perp));
  CHECK(is_zero_matrix(p.pi_dprime));
  CHECK(p.rho_sq == q(1) / (q(4) + q(2) * tau()));
  CHECK((p.n == 3 && p.s == 3 && p.d == 0));
}

TEST_CASE("dodecahedron projectors") {
  const ProjectorSet p = build_projectors(catalog("dodecahedron"));
  CHECK(equal(p.pi, dodecahedron_pattern(q(3, 10), root5() / q(10), q(1, 10))));
  CHECK(equal(p.pi_perp, dodecahedron_pattern(q(7, 10), -root5() / q(10), q(-1, 10))));
  CHECK(equal(p.pi_dprime, dodecahedron_pattern(q(2, 5), q(0), q(-1, 5))));
  CHECK(p.rho_sq == q(1, 10));
  CHECK((p.n == 3 && p.s == 3 && p.d == 4));
}

TEST_CASE("projector algebra on the whole catalog") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const ClusterSpec c = catalog(name);
    const ProjectorSet p = build_projectors(c);
    CHECK(check_projector_algebra(p).ok());
    CHECK(check_invariance(c, p).ok());
    CHECK(check_embedding(c, p).ok());
    CHECK(p.n + p.s + p.d == c.k);
    CHECK(equal(conjugate(p.pi_dprime), p.pi_dprime));
  }
}

TEST_CASE("unsupported clusters are rejected") {
  ClusterSpec reducible;
  reducible.name = "reducible";
  reducible.k = 2;
  reducible.n = 2;
  reducible.gram = identity<GoldenScalar>(2);
  reducible.gram(1, 1) = q(2);
  CHECK_THROWS_AS(build_projectors(reducible), IdempotenceFailure);

  // Rational cluster: the conjugate of pi is pi itself.
  ClusterSpec square;
  square.name = "square";
  square.k = 2;
  square.n = 2;
  square.gram = identity<GoldenScalar>(2);
  CHECK_THROWS_AS(build_projectors(square), ConjugateNotProjector);
}

TEST_CASE("invariance detects a non-commuting generator") {
  ClusterSpec c = catalog("decagon");
  const ProjectorSet p = build_projectors(c);
  c.generators.push_back(SignedPermutation::from_signed_images({2, 1, 3, 4, 5}));
  const ValidationReport rep = check_invariance(c, p);
  CHECK_FALSE(rep.ok());
  CHECK(rep.issues.front().find("generator 3") != std::string::npos);

  ClusterSpec line;
  line.name = "line";
  line.k = 1;
  line.n = 1;
  line.gram = identity<GoldenScalar>(1);
  line.generators = {SignedPermutation::identity(1)};
  ProjectorSet lp;
  lp.pi = identity<GoldenScalar>(1);
  lp.pi_prime = zeros<GoldenScalar>(1, 1);
  lp.pi_dprime = zeros<GoldenScalar>(1, 1);
  CHECK(check_invariance(line, lp).ok());
}

TEST_CASE("embedding frames") {
  const ClusterSpec dec = catalog("decagon");
  CHECK(std::abs((*dec.embedding)(0, 0) - 1) < 1e-12);
  CHECK(std::abs((*dec.embedding)(0, 1)) < 1e-12);
  const ClusterSpec ico = catalog("icosahedron");
  const double t = tau().to_double();
  CHECK((ico.embedding->row(0) - Eigen::RowVector3d(1, t, 0)).norm() < 1e-12);
  const ClusterSpec dod = catalog("dodecahedron");
  CHECK((dod.embedding->row(9) - Eigen::RowVector3d(-1, -1, 1)).norm() < 1e-12);

  ClusterSpec off = dec;
  (*off.embedding)(0, 0) += 1e-6;
  CHECK_FALSE(check_embedding(off, build_projectors(dec)).ok());
}

TEST_CASE("decagon reduction at zero shift") {
  const ProjectorSet p = build_projectors(catalog("decagon"));
  const ReducedScheme r = reduce(p, zero_shift(5));
  CHECK(r.cosets.size() == 6);
  CHECK(r.m == 4);
  CHECK(r.index == 5);
  std::set<std::string> offsets;
  for (std::size_t j = 0; j < r.cosets.size(); ++j) {
    const CosetSlice& c = r.cosets[j];
    // offsets j/5 (1,1,1,1,1), j = 0..5
    CHECK(equal(c.offset, GoldenVector(GoldenVector::Constant(5, q(static_cast<long>(j), 5)))));
    const GoldenVector zj = to_golden(ivec({static_cast<long>(j), 0, 0, 0, 0}));
    CHECK(equal(GoldenVector(mat_mul(p.pi_dprime, zj)), c.offset));
    CHECK(c.has_interior == (j >= 1 && j <= 4));
    std::string key;
    for (Index i = 0; i < 5; ++i) key += c.offset(i).to_string() + ",";
    offsets.insert(key);
  }
  CHECK(offsets.size() == r.cosets.size());
}

TEST_CASE("icosahedron reduction is a single coset") {
  const ProjectorSet p = build_projectors(catalog("icosahedron"));
  const ReducedScheme r = reduce(p, zero_shift(6));
  CHECK(r.cosets.size() == 1);
  CHECK(r.m == 1);
  CHECK(r.dprime_chart.dimension() == 0);
  CHECK(r.calL.lattice == IntegerLatticeBasis::full(6));
  CHECK(r.L == IntegerLatticeBasis::full(6));
  CHECK(r.index == 1);
  CHECK(r.cosets[0].surface.dim == 3);
}

TEST_CASE("dodecahedron reduction") {
  const ProjectorSet p = build_projectors(catalog("dodecahedron"));
  const ReducedScheme r = reduce(p, generic_shift(10));
  CHECK(r.L.rank() == 6);
  CHECK(r.calL.lattice.rank() == 6);
  CHECK(r.index > 0);
  for (const auto& c : r.cosets) {
    CHECK(!c.surface.empty());
    if (c.has_interior) CHECK(c.surface.dim == 3);
    CHECK(equal(GoldenVector(mat_mul(p.pi_dprime, to_golden(c.z))), c.offset));
  }
  CHECK(r.m > 0);
}

TEST_CASE("ellipsoid enumeration matches brute force") {
  Eigen::MatrixXd basis(3, 2);
  basis << 1, 0.5, 0, 1.5, 0.25, -1;
  const Eigen::VectorXd center = Eigen::Vector3d(0.3, -0.7, 0.1);
  const double r2 = 6.5;
  const auto found = lattice_points_in_ellipsoid(basis, center, r2);
  std::vector<std::vector<long>> brute;
  for (long a = -20; a <= 20; ++a)
    for (long b = -20; b <= 20; ++b)
      if ((basis * Eigen::Vector2d(a, b) - center).squaredNorm() <= r2) brute.push_back({a, b});
  CHECK(found == brute);
}
