#pragma once

// Filtered exact predicates on integer points.
//
// Linear and quadratic forms with Q(sqrt5) coefficients are scaled to
// Z[sqrt5] with 64-bit coefficients and evaluated in 128-bit integers as
// A + B sqrt5. The comparison with an exact bound is decided in floating point
// when the gap is far above the rounding error and falls back to exact
// rational arithmetic otherwise, so the answer is always exact.

#include <cstdint>
#include <vector>

#include "quasilattice/geometry.hpp"

namespace quasilattice {

using Int128 = __int128;

BigInt to_bigint(Int128 v);

/// An exact bound with a cached floating approximation.
struct ScaledBound {
  GoldenScalar exact;
  double approx = 0;
  ScaledBound() = default;
  explicit ScaledBound(GoldenScalar v) : exact(std::move(v)), approx(exact.to_double()) {}
};

/// sign(A + B sqrt5 - bound), exact.
int compare(Int128 a, Int128 b, const ScaledBound& bound);

/// x -> <c, x> for x in Z^k, stored as (p + q sqrt5) / den.
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(const GoldenVector& coefficients);

  const BigInt& denominator() const { return den_; }
  /// Numerator parts A, B of den * <c, x>.
  void evaluate(const long* x, Int128& a, Int128& b) const;
  /// den * value, for scaling bounds.
  GoldenScalar scale(const GoldenScalar& v) const { return v * GoldenScalar(Rational(den_)); }

 private:
  std::vector<std::int64_t> p_;
  std::vector<std::int64_t> q_;
  BigInt den_ = 1;
};

/// Polytope {lower_j <= <c_j, x> <= upper_j} over Z^k.
class CompiledPolytope {
 public:
  CompiledPolytope() = default;
  /// slabs are in chart coordinates of chart; the forms act on Z^k through
  /// the chart projection.
  CompiledPolytope(const HalfspaceRep& h, const CoordinateChart& chart,
                   bool full_dimensional = true);

  /// outside / boundary (some slab tight, or polytope lower-dimensional) /
  /// inside.
  Membership test(const long* x) const;
  std::size_t size() const { return slabs_.size(); }

 private:
  struct Slab {
    LinearForm form;
    ScaledBound lower;
    ScaledBound upper;
    bool equality = false;
  };
  std::vector<Slab> slabs_;
  bool full_dimensional_ = true;
};

/// x^T M x <= bound for symmetric M with Q(sqrt5) entries.
class CompiledQuadratic {
 public:
  CompiledQuadratic() = default;
  CompiledQuadratic(const GoldenMatrix& m, const GoldenScalar& bound);

  /// sign(x^T M x - bound)
  int compare(const long* x) const;
  bool within(const long* x) const { return compare(x) <= 0; }
  double value(const long* x) const;

 private:
  Index k_ = 0;
  std::vector<std::int64_t> p_;
  std::vector<std::int64_t> q_;
  ScaledBound bound_;
  GoldenScalar scale_;
};

}  // namespace quasilattice
