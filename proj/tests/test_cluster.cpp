#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace quasilattice;
using namespace fixtures;

namespace {

bool closure_preserves_gram(const ClusterSpec& c) {
  for (const auto& g : close_group(c.generators).elements)
    if (!preserves_gram(g, c.gram)) return false;
  return true;
}

}  // namespace

TEST_CASE("signed permutations") {
  const auto a = SignedPermutation::from_signed_images({-4, -5, -1, -2, -3});
  CHECK(a.image(0) == 3);
  CHECK(a.sign(0) == -1);
  CHECK(a.power(10).is_identity());
  CHECK_FALSE(a.power(5).is_identity());
  CHECK((a * a.inverse()).is_identity());
  const IntVector x = ivec({1, 2, 3, 4, 5});
  // (g x)_{g(j)} = s_j x_j
  CHECK(a.apply(x) == ivec({-3, -4, -5, -1, -2}));
  const GoldenMatrix m = a.matrix<GoldenScalar>();
  CHECK(equal(GoldenMatrix(m.transpose() * m), identity<GoldenScalar>(5)));
  CHECK(SignedPermutation({0, 0}, {1, 1}).is_permutation() == false);
}

TEST_CASE("decagon is valid with its presentation") {
  const ClusterSpec c = catalog("decagon");
  CHECK(validate(c).ok());
  CHECK(c.k == 5);
  CHECK(c.n == 2);
  REQUIRE(c.relations.size() == 3);
  const auto e = SignedPermutation::identity(5);
  CHECK(evaluate_word(c.generators, "a").power(10) == e);
  CHECK(evaluate_word(c.generators, "b").power(2) == e);
  CHECK(evaluate_word(c.generators, "ab").power(2) == e);
  CHECK(c.generators[0] == SignedPermutation::from_signed_images({-4, -5, -1, -2, -3}));
  CHECK(c.generators[1] == SignedPermutation::from_signed_images({1, 5, 4, 3, 2}));
}

TEST_CASE("trivial cluster") {
  ClusterSpec c;
  c.name = "line";
  c.k = 1;
  c.n = 1;
  c.gram = identity<GoldenScalar>(1);
  c.generators = {SignedPermutation::identity(1)};
  CHECK(validate(c).ok());
  CHECK(close_group(c.generators).order() == 1);
}

TEST_CASE("corrupted gram is rejected") {
  ClusterSpec c = catalog("decagon");
  c.gram(0, 1) = q(0);
  c.gram(1, 0) = q(0);
  const ValidationReport rep = validate(c);
  CHECK_FALSE(rep.ok());
  bool mentions_generator = false;
  for (const auto& s : rep.issues) mentions_generator = mentions_generator || s.find("generator") != std::string::npos;
  CHECK(mentions_generator);

  ClusterSpec asym = catalog("decagon");
  asym.gram(0, 1) = q(1, 3);
  CHECK_FALSE(validate(asym).ok());

  ClusterSpec bad_rel = catalog("decagon");
  bad_rel.relations.push_back({"a", 3});
  CHECK_FALSE(validate(bad_rel).ok());
}

TEST_CASE("group orders") {
  CHECK(close_group(catalog("decagon").generators).order() == 20);
  CHECK(close_group({SignedPermutation::identity(4)}).order() == 1);
  CHECK(close_group(catalog("icosahedron").generators).order() == 60);
  CHECK(close_group(catalog("dodecahedron").generators).order() == 60);
  CHECK(close_group(catalog("icosidodecahedron").generators).order() == 60);
  CHECK(close_group(two_shell(1, 1).generators).order() == 60);
  CHECK_THROWS_AS(close_group(catalog("icosahedron").generators, 30), GroupClosureError);
}

TEST_CASE("closure elements preserve the gram matrix") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    CHECK(closure_preserves_gram(catalog(name)));
  }
}

TEST_CASE("catalog gram entries") {
  const ClusterSpec dec = catalog("decagon");
  CHECK(dec.gram(0, 1) == (root5() - q(1)) / q(4));
  CHECK(dec.gram(0, 2) == -(q(1) + root5()) / q(4));
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) {
      const GoldenScalar& v = dec.gram(i, j);
      CHECK((v == q(1) || v == (root5() - q(1)) / q(4) || v == -(q(1) + root5()) / q(4)));
    }

  const ClusterSpec ico = catalog("icosahedron");
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) {
      const GoldenScalar& v = ico.gram(i, j);
      if (i == j)
        CHECK(v == q(2) + tau());
      else
        CHECK((v == tau() || v == -tau() || v == q(1) || v == q(-1)));
    }

  const ClusterSpec dod = catalog("dodecahedron");
  CHECK(dod.gram(0, 0) == q(3));
  CHECK(dod.gram(0, 1) == root5());

  const ClusterSpec ido = catalog("icosidodecahedron");
  CHECK(ido.k == 15);
  for (Index i = 0; i < 15; ++i) CHECK(ido.gram(i, i) == q(1));

  const ClusterSpec two = two_shell(2, 3);
  CHECK(two.k == 16);
  CHECK(validate(two).ok());
  CHECK(two.gram(0, 0) == q(4) * (q(2) + tau()));
  CHECK(two.gram(6, 6) == q(27));
}

TEST_CASE("dodecahedron generators") {
  const ClusterSpec dod = catalog("dodecahedron");
  REQUIRE(dod.generators.size() == 2);
  CHECK(dod.generators[0] ==
        SignedPermutation::from_signed_images({2, 3, 4, 5, 1, 7, 8, 9, 10, 6}));
  CHECK(dod.generators[1] ==
        SignedPermutation::from_signed_images({10, -8, 6, 5, 4, 3, -7, -2, -9, 1}));
}

TEST_CASE("embeddings reproduce the gram matrix") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const ClusterSpec c = catalog(name);
    REQUIRE(c.embedding);
    const Eigen::MatrixXd g = *c.embedding * c.embedding->transpose();
    CHECK((g - to_double(c.gram)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog("heptagon"), UnknownCluster);
  CHECK_THROWS_AS(catalog("two_shell(1)"), UnknownCluster);
  CHECK_THROWS_AS(catalog("two_shell(sqrt5,1)"), std::invalid_argument);
  CHECK_THROWS_AS(two_shell(0, 1), std::invalid_argument);
  CHECK(catalog("two_shell(1/2,3)").name == "two_shell(1/2,3)");
  CHECK(catalog("two_shell").name == "two_shell(1,1)");
}
