#pragma once

// G-clusters: a finite group acting by signed permutations on the cluster
// vectors {+-e_1, ..., +-e_k}, described by the exact Gram matrix <e_i, e_j>.
// Floating coordinates of the e_i are carried only for rendering.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "quasilattice/exact_linalg.hpp"
#include "quasilattice/lattice.hpp"

namespace quasilattice {

/// g e_j = signs[j] * e_{images[j]} (0-based indices, signs +-1).
class SignedPermutation {
 public:
  SignedPermutation() = default;
  SignedPermutation(std::vector<int> images, std::vector<int> signs);

  static SignedPermutation identity(int k);
  /// From 1-based signed images, e.g. {-4, -5, -1, -2, -3}.
  static SignedPermutation from_signed_images(const std::vector<int>& images);

  int size() const { return static_cast<int>(images_.size()); }
  const std::vector<int>& images() const { return images_; }
  const std::vector<int>& signs() const { return signs_; }
  int image(int j) const { return images_[static_cast<std::size_t>(j)]; }
  int sign(int j) const { return signs_[static_cast<std::size_t>(j)]; }

  bool is_permutation() const;
  bool is_identity() const;

  /// (a * b) acts as a after b.
  friend SignedPermutation operator*(const SignedPermutation& a,
                                     const SignedPermutation& b);
  SignedPermutation inverse() const;
  SignedPermutation power(int e) const;

  /// Signed permutation matrix with M(g(j), j) = s_j.
  template <class Scalar>
  Matrix<Scalar> matrix() const {
    Matrix<Scalar> m = zeros<Scalar>(size(), size());
    for (int j = 0; j < size(); ++j) m(image(j), j) = Scalar(sign(j));
    return m;
  }

  /// Linear action on superspace coordinates: (g x)_{g(j)} = s_j x_j.
  IntVector apply(const IntVector& x) const;
  GoldenVector apply(const GoldenVector& x) const;
  /// Translation n_g making x -> g x + n_g map the cube [0,1]^k onto itself.
  IntVector cube_offset() const;

  friend bool operator==(const SignedPermutation&,
                         const SignedPermutation&) = default;
  friend bool operator<(const SignedPermutation& a, const SignedPermutation& b);

 private:
  std::vector<int> images_;
  std::vector<int> signs_;
};

/// Relation word over generator letters a, b, c, ... raised to a power,
/// e.g. {"ab", 2} means (ab)^2 = e.
struct Relation {
  std::string word;
  int power = 1;
};

struct ClusterSpec {
  std::string name;
  int k = 0;
  int n = 0;
  GoldenMatrix gram;
  std::vector<SignedPermutation> generators;
  std::vector<Relation> relations;
  std::optional<Eigen::MatrixXd> embedding;  // k x n, rows are e_i
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const ClusterSpec& cluster);

/// Gram preservation gram[g(i), g(j)] s_i s_j = gram[i, j].
bool preserves_gram(const SignedPermutation& g, const GoldenMatrix& gram);

SignedPermutation evaluate_word(const std::vector<SignedPermutation>& gens,
                                const std::string& word);

class GroupClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroupClosure {
  std::vector<SignedPermutation> elements;  // identity first, BFS order
  std::size_t order() const { return elements.size(); }
};

/// Breadth-first closure under left multiplication by the generators.
GroupClosure close_group(const std::vector<SignedPermutation>& generators,
                         std::size_t bound = 10000);

class UnknownCluster : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact 3-vectors over Q(sqrt5); used to build the icosahedral catalog.
using Vec3 = Eigen::Matrix<GoldenScalar, 3, 1>;
using Mat3 = Eigen::Matrix<GoldenScalar, 3, 3>;

/// Rotations a, b generating the icosahedral group (a^5 = b^2 = (ab)^3 = I).
Mat3 icosahedral_rotation_a();
Mat3 icosahedral_rotation_b();

/// Cluster whose vectors are the given exact 3-vectors; generators are the
/// signed permutations induced by the rotations (throws if a rotation does
/// not permute the vectors up to sign).
ClusterSpec cluster_from_vectors(const std::string& name,
                                 const std::vector<Vec3>& vectors,
                                 const std::vector<Mat3>& rotations,
                                 std::vector<Relation> relations);

/// One representative per +- pair of the orbit of v, in breadth-first order.
std::vector<Vec3> orbit_representatives(const Vec3& v,
                                        const std::vector<Mat3>& rotations);

/// decagon, icosahedron, dodecahedron, icosidodecahedron, two_shell(a,b).
ClusterSpec catalog(const std::string& name);
ClusterSpec two_shell(const Rational& alpha, const Rational& beta);
std::vector<std::string> catalog_names();

}  // namespace quasilattice
