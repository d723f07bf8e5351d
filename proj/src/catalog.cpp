#include <cmath>
#include <numbers>

#include "quasilattice/cluster.hpp"

namespace quasilattice {

namespace {

GoldenScalar half(const GoldenScalar& x) { return x * GoldenScalar(Rational(1, 2)); }

Vec3 vec(GoldenScalar x, GoldenScalar y, GoldenScalar z) {
  Vec3 v;
  v << x, y, z;
  return v;
}

bool same(const Vec3& a, const Vec3& b) {
  return a(0) == b(0) && a(1) == b(1) && a(2) == b(2);
}

GoldenScalar dot3(const Vec3& a, const Vec3& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

std::vector<Vec3> icosahedron_vectors() {
  const GoldenScalar t = GoldenScalar::golden_ratio();
  // e1, e2 as usual; the remaining four are ordered and signed so that the
  // projector takes the circulant-like form with alpha = 1/2, beta = sqrt5/10.
  return {vec(1, t, 0), vec(-1, t, 0), vec(0, 1, t),
          vec(t, 0, 1), vec(t, 0, -1), vec(0, 1, -t)};
}

std::vector<Vec3> dodecahedron_vectors() {
  const GoldenScalar t = GoldenScalar::golden_ratio();
  const GoldenScalar u = t - GoldenScalar(1);
  return {vec(1, 1, 1),  vec(0, t, u),  vec(-1, 1, 1), vec(-u, 0, t),
          vec(u, 0, t),  vec(1, -1, 1), vec(t, u, 0),  vec(0, t, -u),
          vec(-t, u, 0), vec(-1, -1, 1)};
}

std::vector<Relation> icosahedral_relations() {
  return {{"a", 5}, {"b", 2}, {"ab", 3}};
}

ClusterSpec decagon() {
  ClusterSpec c;
  c.name = "decagon";
  c.k = 5;
  c.n = 2;
  const GoldenScalar c1(Rational(-1, 4), Rational(1, 4));   // cos(2 pi/5)
  const GoldenScalar c2(Rational(-1, 4), Rational(-1, 4));  // cos(4 pi/5)
  c.gram.resize(5, 5);
  Eigen::MatrixXd emb(5, 2);
  for (int i = 0; i < 5; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / 5.0;
    emb(i, 0) = std::cos(angle);
    emb(i, 1) = std::sin(angle);
    for (int j = 0; j < 5; ++j) {
      const int d = ((i - j) % 5 + 5) % 5;
      c.gram(i, j) = d == 0 ? GoldenScalar(1) : (d == 1 || d == 4 ? c1 : c2);
    }
  }
  c.embedding = emb;
  c.generators = {SignedPermutation::from_signed_images({-4, -5, -1, -2, -3}),
                  SignedPermutation::from_signed_images({1, 5, 4, 3, 2})};
  c.relations = {{"a", 10}, {"b", 2}, {"ab", 2}};
  return c;
}

std::string trim_copy(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Mat3 icosahedral_rotation_a() {
  const GoldenScalar t = GoldenScalar::golden_ratio();
  const GoldenScalar u = t - GoldenScalar(1);
  const GoldenScalar h(Rational(1, 2));
  Mat3 a;
  a << half(u), -half(t), h,
       half(t), h, half(u),
       -h, half(u), half(t);
  return a;
}

Mat3 icosahedral_rotation_b() {
  Mat3 b;
  b << -1, 0, 0,
       0, -1, 0,
       0, 0, 1;
  return b;
}

std::vector<Vec3> orbit_representatives(const Vec3& v,
                                        const std::vector<Mat3>& rotations) {
  std::vector<Vec3> orbit{v};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& r : rotations) {
      const Vec3 w = (r * orbit[i]).eval();
      bool known = false;
      for (const auto& o : orbit)
        if (same(o, w)) {
          known = true;
          break;
        }
      if (!known) {
        if (orbit.size() > 10000)
          throw GroupClosureError("orbit exceeds 10000 vectors");
        orbit.push_back(w);
      }
    }
  }
  std::vector<Vec3> reps;
  for (const auto& w : orbit) {
    const Vec3 neg = (-w).eval();
    bool paired = false;
    for (const auto& r : reps)
      if (same(r, w) || same(r, neg)) {
        paired = true;
        break;
      }
    if (!paired) reps.push_back(w);
  }
  return reps;
}

ClusterSpec cluster_from_vectors(const std::string& name,
                                 const std::vector<Vec3>& vectors,
                                 const std::vector<Mat3>& rotations,
                                 std::vector<Relation> relations) {
  ClusterSpec c;
  c.name = name;
  c.k = static_cast<int>(vectors.size());
  c.n = 3;
  c.gram.resize(c.k, c.k);
  Eigen::MatrixXd emb(c.k, 3);
  for (int i = 0; i < c.k; ++i) {
    for (int d = 0; d < 3; ++d)
      emb(i, d) = vectors[static_cast<std::size_t>(i)](d).to_double();
    for (int j = 0; j < c.k; ++j)
      c.gram(i, j) = dot3(vectors[static_cast<std::size_t>(i)],
                          vectors[static_cast<std::size_t>(j)]);
  }
  c.embedding = emb;
  for (const auto& r : rotations) {
    std::vector<int> images;
    for (const auto& v : vectors) {
      const Vec3 w = (r * v).eval();
      const Vec3 neg = (-w).eval();
      int found = 0;
      for (int i = 0; i < c.k && found == 0; ++i) {
        if (same(vectors[static_cast<std::size_t>(i)], w)) found = i + 1;
        if (same(vectors[static_cast<std::size_t>(i)], neg)) found = -(i + 1);
      }
      if (found == 0)
        throw std::invalid_argument(name + ": rotation does not permute the cluster");
      images.push_back(found);
    }
    c.generators.push_back(SignedPermutation::from_signed_images(images));
  }
  c.relations = std::move(relations);
  return c;
}

ClusterSpec two_shell(const Rational& alpha, const Rational& beta) {
  if (alpha <= 0 || beta <= 0)
    throw std::invalid_argument("two_shell: alpha and beta must be positive");
  std::vector<Vec3> vs;
  for (const auto& v : icosahedron_vectors()) vs.push_back(v * GoldenScalar(alpha));
  for (const auto& v : dodecahedron_vectors()) vs.push_back(v * GoldenScalar(beta));
  return cluster_from_vectors(
      "two_shell(" + to_string(alpha) + "," + to_string(beta) + ")", vs,
      {icosahedral_rotation_a(), icosahedral_rotation_b()},
      icosahedral_relations());
}

ClusterSpec catalog(const std::string& raw) {
  const std::string name = trim_copy(raw);
  const std::vector<Mat3> rot{icosahedral_rotation_a(), icosahedral_rotation_b()};
  if (name == "decagon") return decagon();
  if (name == "icosahedron")
    return cluster_from_vectors(name, icosahedron_vectors(), rot,
                                icosahedral_relations());
  if (name == "dodecahedron")
    return cluster_from_vectors(name, dodecahedron_vectors(), rot,
                                icosahedral_relations());
  if (name == "icosidodecahedron")
    return cluster_from_vectors(name, orbit_representatives(vec(1, 0, 0), rot),
                                rot, icosahedral_relations());
  if (name == "two_shell") return two_shell(1, 1);
  if (name.rfind("two_shell(", 0) == 0 && name.back() == ')') {
    const std::string args = name.substr(10, name.size() - 11);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw UnknownCluster("two_shell expects two arguments: " + name);
    return two_shell(parse_rational(args.substr(0, comma)),
                     parse_rational(args.substr(comma + 1)));
  }
  throw UnknownCluster("unknown cluster '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"decagon", "icosahedron", "dodecahedron", "icosidodecahedron",
          "two_shell(1,1)"};
}

}  // namespace quasilattice
