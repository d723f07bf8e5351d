#include "quasilattice/lattice.hpp"

#include <optional>
#include <tuple>

namespace quasilattice {

namespace {

// s*x + t*y = g with g >= 0.
std::tuple<BigInt, BigInt, BigInt> xgcd(const BigInt& x, const BigInt& y) {
  BigInt old_r = x, r = y;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    const BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// (c_i, c_j) <- (s c_i + t c_j, u c_i + v c_j)
void combine_columns(IntMatrix& m, Index i, Index j, const BigInt& s,
                     const BigInt& t, const BigInt& u, const BigInt& v) {
  for (Index r = 0; r < m.rows(); ++r) {
    const BigInt ci = m(r, i);
    const BigInt cj = m(r, j);
    m(r, i) = s * ci + t * cj;
    m(r, j) = u * ci + v * cj;
  }
}

void axpy_column(IntMatrix& m, Index dst, const BigInt& q, Index src) {
  for (Index r = 0; r < m.rows(); ++r)
    if (m(r, src) != 0) m(r, dst) -= q * m(r, src);
}

void negate_column(IntMatrix& m, Index c) {
  for (Index r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

Index pivot_row(const IntMatrix& h, Index col) {
  for (Index r = 0; r < h.rows(); ++r)
    if (h(r, col) != 0) return r;
  return -1;
}

// Integer coordinates of target in an HNF basis, if it lies in the lattice.
std::optional<IntVector> coordinates_in(const IntMatrix& hnf,
                                        const IntVector& target) {
  IntVector residual = target;
  IntVector coords(hnf.cols());
  for (Index j = 0; j < hnf.cols(); ++j) {
    const Index p = pivot_row(hnf, j);
    if (residual(p) % hnf(p, j) != 0) return std::nullopt;
    coords(j) = residual(p) / hnf(p, j);
    if (coords(j) != 0)
      for (Index r = 0; r < hnf.rows(); ++r) residual(r) -= coords(j) * hnf(r, j);
  }
  for (Index r = 0; r < residual.size(); ++r)
    if (residual(r) != 0) return std::nullopt;
  return coords;
}

// Fraction-free (Bareiss) determinant.
BigInt determinant(IntMatrix a) {
  const Index n = a.rows();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Index swap = -1;
      for (Index r = k + 1; r < n; ++r)
        if (a(r, k) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  const BigInt g = std::get<0>(xgcd(a, b));
  BigInt l = a / g * b;
  return l < 0 ? BigInt(-l) : l;
}

HermiteDecomposition hermite_decomposition(const IntMatrix& generators) {
  IntMatrix a = generators;
  const Index k = a.rows();
  const Index m = a.cols();
  IntMatrix u = identity<BigInt>(m);
  Index col = 0;
  for (Index row = 0; row < k && col < m; ++row) {
    for (Index j = col + 1; j < m; ++j) {
      if (a(row, j) == 0) continue;
      const BigInt x = a(row, col);
      const BigInt y = a(row, j);
      const auto [g, s, t] = xgcd(x, y);
      const BigInt xg = x / g;
      const BigInt yg = y / g;
      combine_columns(a, col, j, s, t, -yg, xg);
      combine_columns(u, col, j, s, t, -yg, xg);
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) {
      negate_column(a, col);
      negate_column(u, col);
    }
    for (Index i = 0; i < col; ++i) {
      const BigInt q = floor_div(a(row, i), a(row, col));
      if (q == 0) continue;
      axpy_column(a, i, q, col);
      axpy_column(u, i, q, col);
    }
    ++col;
  }
  return {a.leftCols(col), u, col};
}

IntMatrix hermite_normal_form(const IntMatrix& generators) {
  return hermite_decomposition(generators).hnf;
}

IntegerLatticeBasis::IntegerLatticeBasis(const IntMatrix& generators,
                                         BigInt denominator)
    : basis_(hermite_normal_form(generators)),
      denominator_(std::move(denominator)) {
  if (denominator_ <= 0)
    throw LatticeError("lattice denominator must be positive");
}

IntegerLatticeBasis IntegerLatticeBasis::full(Index k) {
  return IntegerLatticeBasis(identity<BigInt>(k));
}

IntMatrix IntegerLatticeBasis::basis_at(const BigInt& denominator) const {
  if (denominator % denominator_ != 0)
    throw LatticeError("basis_at: denominator is not a multiple");
  const BigInt f = denominator / denominator_;
  IntMatrix out = basis_;
  for (Index i = 0; i < out.size(); ++i) out.data()[i] *= f;
  return out;
}

bool IntegerLatticeBasis::contains(const IntVector& v,
                                   const BigInt& denominator) const {
  if (v.size() != ambient_dimension())
    throw ShapeMismatch("lattice membership: wrong vector length");
  const BigInt l = lcm(denominator_, denominator);
  IntVector target = v;
  const BigInt f = l / denominator;
  for (Index i = 0; i < target.size(); ++i) target(i) *= f;
  return coordinates_in(basis_at(l), target).has_value();
}

bool IntegerLatticeBasis::contains(const IntegerLatticeBasis& other) const {
  for (Index c = 0; c < other.rank(); ++c)
    if (!contains(IntVector(other.basis_.col(c)), other.denominator_))
      return false;
  return true;
}

bool operator==(const IntegerLatticeBasis& a, const IntegerLatticeBasis& b) {
  if (a.ambient_dimension() != b.ambient_dimension() || a.rank() != b.rank())
    return false;
  const BigInt l = lcm(a.denominator_, b.denominator_);
  const IntMatrix ha = a.basis_at(l);
  const IntMatrix hb = b.basis_at(l);
  for (Index i = 0; i < ha.size(); ++i)
    if (ha.data()[i] != hb.data()[i]) return false;
  return true;
}

BigInt common_denominator(const GoldenMatrix& m) {
  BigInt d = 1;
  for (Index i = 0; i < m.size(); ++i) {
    const GoldenScalar& x = m.data()[i];
    if (!x.is_rational()) throw NonRationalEntry();
    d = lcm(d, boost::multiprecision::denominator(x.rational_part()));
  }
  return d;
}

IntMatrix scaled_integer_matrix(const GoldenMatrix& m, const BigInt& d) {
  IntMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.size(); ++i) {
    const Rational r = m.data()[i].rational_part() * Rational(d);
    if (boost::multiprecision::denominator(r) != 1)
      throw LatticeError("scaled_integer_matrix: denominator does not clear");
    out.data()[i] = boost::multiprecision::numerator(r);
  }
  return out;
}

IntegerLatticeBasis integer_kernel(const GoldenMatrix& m) {
  const BigInt d = common_denominator(m);
  const auto dec = hermite_decomposition(scaled_integer_matrix(m, d));
  return IntegerLatticeBasis(dec.transform.rightCols(m.cols() - dec.rank));
}

ImageLattice image_lattice(const GoldenMatrix& m) {
  const BigInt d = common_denominator(m);
  const auto dec = hermite_decomposition(scaled_integer_matrix(m, d));
  return {IntegerLatticeBasis(dec.hnf, d), dec.transform.leftCols(dec.rank)};
}

IntegerLatticeBasis image_lattice_basis(const GoldenMatrix& m) {
  return image_lattice(m).lattice;
}

BigInt lattice_index(const IntegerLatticeBasis& sub,
                     const IntegerLatticeBasis& super) {
  if (sub.ambient_dimension() != super.ambient_dimension() ||
      sub.rank() != super.rank())
    throw LatticeError("lattice_index: rank mismatch");
  const BigInt l = lcm(sub.denominator(), super.denominator());
  const IntMatrix hs = sub.basis_at(l);
  const IntMatrix hp = super.basis_at(l);
  IntMatrix change(super.rank(), sub.rank());
  for (Index c = 0; c < hs.cols(); ++c) {
    const auto coords = coordinates_in(hp, IntVector(hs.col(c)));
    if (!coords) throw LatticeError("lattice_index: sublattice not contained");
    change.col(c) = *coords;
  }
  BigInt det = determinant(change);
  return det < 0 ? BigInt(-det) : det;
}

}  // namespace quasilattice
