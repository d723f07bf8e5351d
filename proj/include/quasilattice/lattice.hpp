#pragma once

// Integer lattices with an explicit global scale.
//
// A lattice is stored as (1/denominator) * span_Z(columns of basis), with the
// basis in column Hermite normal form. Irrational scale factors such as
// kappa never enter: all superspace lattices are handled at unit scale.

#include <stdexcept>
#include <vector>

#include "quasilattice/exact_linalg.hpp"

namespace quasilattice {

using IntMatrix = Matrix<BigInt>;
using IntVector = Vector<BigInt>;

class NonRationalEntry : public std::invalid_argument {
 public:
  NonRationalEntry()
      : std::invalid_argument("matrix has entries outside Q") {}
};

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HermiteDecomposition {
  IntMatrix hnf;        // k x rank, column Hermite normal form
  IntMatrix transform;  // unimodular, generators * transform = [hnf | 0]
  Index rank = 0;
};

/// Column Hermite normal form: pivot rows strictly increase with the column,
/// pivots are positive, entries left of a pivot lie in [0, pivot).
HermiteDecomposition hermite_decomposition(const IntMatrix& generators);
IntMatrix hermite_normal_form(const IntMatrix& generators);

class IntegerLatticeBasis {
 public:
  IntegerLatticeBasis() = default;
  /// Lattice (1/denominator) * span_Z(columns of generators).
  explicit IntegerLatticeBasis(const IntMatrix& generators,
                               BigInt denominator = 1);

  static IntegerLatticeBasis full(Index k);

  Index ambient_dimension() const { return basis_.rows(); }
  Index rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  const BigInt& denominator() const { return denominator_; }

  /// Basis rescaled to the given denominator (must be a multiple of ours).
  IntMatrix basis_at(const BigInt& denominator) const;

  /// Membership of (1/denominator) * v.
  bool contains(const IntVector& v, const BigInt& denominator = 1) const;
  bool contains(const IntegerLatticeBasis& other) const;

  friend bool operator==(const IntegerLatticeBasis& a,
                         const IntegerLatticeBasis& b);

 private:
  IntMatrix basis_;
  BigInt denominator_ = 1;
};

/// HNF basis of {x in Z^k : m x = 0}; throws NonRationalEntry.
IntegerLatticeBasis integer_kernel(const GoldenMatrix& m);

struct ImageLattice {
  IntegerLatticeBasis lattice;  // m(Z^k), denominator = common denominator
  /// Integer preimages: m * preimages = lattice.basis() / denominator.
  IntMatrix preimages;
};

/// m(Z^k) for a rational matrix; throws NonRationalEntry.
ImageLattice image_lattice(const GoldenMatrix& m);
IntegerLatticeBasis image_lattice_basis(const GoldenMatrix& m);

/// [super : sub] = |det| of the change of basis; throws LatticeError when
/// sub is not contained in super or the ranks differ.
BigInt lattice_index(const IntegerLatticeBasis& sub,
                     const IntegerLatticeBasis& super);

BigInt common_denominator(const GoldenMatrix& rational_matrix);
IntMatrix scaled_integer_matrix(const GoldenMatrix& rational_matrix,
                                const BigInt& denominator);
BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace quasilattice
