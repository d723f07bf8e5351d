#pragma once

// Exact dense linear algebra over Q and Q(sqrt5).
//
// All routines are templated on the Eigen scalar and only use field
// operations and exact zero tests, so they work for Rational and GoldenScalar
// alike. Pivots are the first entry with nonzero exact sign; magnitude never
// matters in exact arithmetic.

#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "quasilattice/goldfield.hpp"

namespace quasilattice {

using Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using GoldenMatrix = Matrix<GoldenScalar>;
using GoldenVector = Vector<GoldenScalar>;
using RationalMatrix = Matrix<Rational>;

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_zero(const GoldenScalar& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;       // reduced row echelon form
  std::vector<Index> pivots;    // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
template <class Derived>
RowEchelon<typename Derived::Scalar> row_echelon(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{m.eval(), {}};
  Matrix<Scalar>& a = out.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index pivot = -1;
    for (Index r = row; r < a.rows(); ++r) {
      if (!is_zero(a(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Scalar inv = Scalar(1) / a(row, col);
    for (Index c = col; c < a.cols(); ++c)
      if (!is_zero(a(row, c))) a(row, c) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const Scalar f = a(r, col);
      for (Index c = col; c < a.cols(); ++c)
        if (!is_zero(a(row, c))) a(r, c) -= f * a(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return row_echelon(m).rank();
}

/// Basis of the right null space, one basis vector per column
/// (m.cols() x nullity; zero columns when m is injective).
template <class Derived>
Matrix<typename Derived::Scalar> kernel_basis(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto ech = row_echelon(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  Matrix<Scalar> basis(n, n - ech.rank());
  basis.setConstant(Scalar(0));
  Index out = 0;
  for (Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, out) = Scalar(1);
    for (Index r = 0; r < ech.rank(); ++r)
      basis(ech.pivots[static_cast<std::size_t>(r)], out) = -ech.reduced(r, free);
    ++out;
  }
  return basis;
}

template <class Scalar>
struct AffineSolution {
  Vector<Scalar> particular;  // free variables set to zero
  Matrix<Scalar> kernel;      // columns span the homogeneous solutions
};

/// Solves m x = c; std::nullopt when c is outside the column space.
template <class Derived, class VDerived>
std::optional<AffineSolution<typename Derived::Scalar>> solve_affine(
    const Eigen::MatrixBase<Derived>& m, const Eigen::MatrixBase<VDerived>& c) {
  using Scalar = typename Derived::Scalar;
  if (c.size() != m.rows())
    throw ShapeMismatch("solve_affine: right-hand side has wrong length");
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = c;
  const auto ech = row_echelon(aug);
  if (!ech.pivots.empty() && ech.pivots.back() == m.cols()) return std::nullopt;
  AffineSolution<Scalar> sol;
  sol.particular = Vector<Scalar>::Constant(m.cols(), Scalar(0));
  for (Index r = 0; r < ech.rank(); ++r)
    sol.particular(ech.pivots[static_cast<std::size_t>(r)]) = ech.reduced(r, m.cols());
  sol.kernel = kernel_basis(m);
  return sol;
}

template <class Scalar>
Matrix<Scalar> identity(Index k) {
  Matrix<Scalar> m(k, k);
  m.setConstant(Scalar(0));
  for (Index i = 0; i < k; ++i) m(i, i) = Scalar(1);
  return m;
}

template <class Scalar>
Matrix<Scalar> zeros(Index rows, Index cols) {
  Matrix<Scalar> m(rows, cols);
  m.setConstant(Scalar(0));
  return m;
}

template <class Scalar>
Vector<Scalar> zero_vector(Index n) {
  return Vector<Scalar>::Constant(n, Scalar(0));
}

/// Exact product with a shape check that throws instead of asserting.
template <class A, class B>
Matrix<typename A::Scalar> mat_mul(const Eigen::MatrixBase<A>& a,
                                   const Eigen::MatrixBase<B>& b) {
  if (a.cols() != b.rows()) throw ShapeMismatch("mat_mul: inner dimensions differ");
  return (a * b).eval();
}

template <class A, class B>
Matrix<typename A::Scalar> mat_sub(const Eigen::MatrixBase<A>& a,
                                   const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeMismatch("mat_sub: shapes differ");
  return (a - b).eval();
}

template <class Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& m) {
  typename Derived::Scalar t(0);
  for (Index i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

/// Indices of a maximal set of linearly independent rows, in increasing order.
template <class Derived>
std::vector<Index> independent_rows(const Eigen::MatrixBase<Derived>& m) {
  return row_echelon(m.transpose()).pivots;
}

inline GoldenMatrix conjugate(const GoldenMatrix& m) {
  return m.unaryExpr([](const GoldenScalar& x) { return x.conjugate(); });
}

inline bool is_rational(const GoldenMatrix& m) {
  for (Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_rational()) return false;
  return true;
}

inline bool is_zero_matrix(const GoldenMatrix& m) {
  for (Index i = 0; i < m.size(); ++i)
    if (!m.data()[i].is_zero()) return false;
  return true;
}

inline Eigen::MatrixXd to_double(const GoldenMatrix& m) {
  return m.unaryExpr([](const GoldenScalar& x) { return x.to_double(); });
}

inline GoldenScalar dot(const GoldenVector& a, const GoldenVector& b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot: lengths differ");
  GoldenScalar s;
  for (Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero() && !b(i).is_zero()) s += a(i) * b(i);
  return s;
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
inline GoldenVector canonical_direction(const GoldenVector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) {
      const GoldenScalar inv = v(i).inverse();
      GoldenVector out = v;
      for (Index j = 0; j < v.size(); ++j)
        if (!out(j).is_zero()) out(j) *= inv;
      return out;
    }
  }
  return v;
}

/// Lexicographic order on exact entries (by value); used for canonical sets.
inline bool lex_less(const GoldenVector& a, const GoldenVector& b) {
  for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    const int s = (a(i) - b(i)).sign();
    if (s != 0) return s < 0;
  }
  return a.size() < b.size();
}

inline bool equal(const GoldenVector& a, const GoldenVector& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

inline bool equal(const GoldenMatrix& a, const GoldenMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (!(a.data()[i] == b.data()[i])) return false;
  return true;
}

}  // namespace quasilattice
