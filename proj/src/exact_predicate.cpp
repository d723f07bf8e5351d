#include "quasilattice/exact_predicate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace quasilattice {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

std::int64_t to_int64(const Rational& r) {
  if (boost::multiprecision::denominator(r) != 1)
    throw std::logic_error("coefficient did not clear its denominator");
  const BigInt n = boost::multiprecision::numerator(r);
  if (n > BigInt(std::numeric_limits<std::int64_t>::max() / 4) ||
      n < BigInt(std::numeric_limits<std::int64_t>::min() / 4))
    throw std::overflow_error("coefficient too large for the fast predicate");
  return n.convert_to<std::int64_t>();
}

BigInt common_den(const GoldenScalar* begin, const GoldenScalar* end) {
  BigInt d = 1;
  for (const GoldenScalar* it = begin; it != end; ++it) {
    d = lcm(d, boost::multiprecision::denominator(it->rational_part()));
    d = lcm(d, boost::multiprecision::denominator(it->sqrt5_part()));
  }
  return d;
}

}  // namespace

BigInt to_bigint(Int128 v) {
  const bool negative = v < 0;
  const unsigned __int128 u =
      negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
               : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<unsigned long long>(u >> 64);
  r <<= 64;
  r += static_cast<unsigned long long>(u & 0xFFFFFFFFFFFFFFFFull);
  return negative ? BigInt(-r) : r;
}

int compare(Int128 a, Int128 b, const ScaledBound& bound) {
  const double va = static_cast<double>(a);
  const double vb = static_cast<double>(b);
  const double diff = va + vb * kSqrt5 - bound.approx;
  const double err =
      1e-10 * (std::abs(va) + 3 * std::abs(vb) + std::abs(bound.approx));
  if (diff > err) return 1;
  if (diff < -err) return -1;
  const GoldenScalar v(Rational(to_bigint(a)), Rational(to_bigint(b)));
  return (v - bound.exact).sign();
}

LinearForm::LinearForm(const GoldenVector& c)
    : den_(common_den(c.data(), c.data() + c.size())) {
  const Rational den(den_);
  for (Index i = 0; i < c.size(); ++i) {
    p_.push_back(to_int64(c(i).rational_part() * den));
    q_.push_back(to_int64(c(i).sqrt5_part() * den));
  }
}

void LinearForm::evaluate(const long* x, Int128& a, Int128& b) const {
  a = 0;
  b = 0;
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (x[i] == 0) continue;
    a += static_cast<Int128>(p_[i]) * x[i];
    b += static_cast<Int128>(q_[i]) * x[i];
  }
}

CompiledPolytope::CompiledPolytope(const HalfspaceRep& h,
                                   const CoordinateChart& chart,
                                   bool full_dimensional)
    : full_dimensional_(full_dimensional) {
  const GoldenMatrix r = chart.restricted();
  for (const auto& s : h.slabs) {
    GoldenVector c = GoldenVector::Constant(r.cols(), GoldenScalar(0));
    for (Index i = 0; i < r.rows(); ++i)
      if (!s.normal(i).is_zero())
        for (Index j = 0; j < r.cols(); ++j)
          if (!r(i, j).is_zero()) c(j) += s.normal(i) * r(i, j);
    Slab slab;
    slab.form = LinearForm(c);
    slab.lower = ScaledBound(slab.form.scale(s.lower));
    slab.upper = ScaledBound(slab.form.scale(s.upper));
    slab.equality = s.is_equality();
    slabs_.push_back(std::move(slab));
  }
}

Membership CompiledPolytope::test(const long* x) const {
  bool tight = false;
  Int128 a, b;
  for (const auto& s : slabs_) {
    s.form.evaluate(x, a, b);
    const int lo = compare(a, b, s.lower);
    if (s.equality) {
      if (lo != 0) return Membership::outside;
      continue;
    }
    if (lo < 0) return Membership::outside;
    const int hi = compare(a, b, s.upper);
    if (hi > 0) return Membership::outside;
    if (lo == 0 || hi == 0) tight = true;
  }
  if (!full_dimensional_ || tight) return Membership::boundary;
  return Membership::inside;
}

CompiledQuadratic::CompiledQuadratic(const GoldenMatrix& m,
                                     const GoldenScalar& bound)
    : k_(m.rows()) {
  if (m.rows() != m.cols()) throw ShapeMismatch("quadratic form must be square");
  const BigInt den = common_den(m.data(), m.data() + m.size());
  scale_ = GoldenScalar(Rational(den));
  for (Index i = 0; i < k_; ++i)
    for (Index j = 0; j < k_; ++j) {
      p_.push_back(to_int64(m(i, j).rational_part() * Rational(den)));
      q_.push_back(to_int64(m(i, j).sqrt5_part() * Rational(den)));
    }
  bound_ = ScaledBound(bound * scale_);
}

int CompiledQuadratic::compare(const long* x) const {
  Int128 a = 0, b = 0;
  for (Index i = 0; i < k_; ++i) {
    if (x[i] == 0) continue;
    Int128 ya = 0, yb = 0;
    const std::size_t row = static_cast<std::size_t>(i * k_);
    for (Index j = 0; j < k_; ++j) {
      if (x[j] == 0) continue;
      ya += static_cast<Int128>(p_[row + static_cast<std::size_t>(j)]) * x[j];
      yb += static_cast<Int128>(q_[row + static_cast<std::size_t>(j)]) * x[j];
    }
    a += ya * x[i];
    b += yb * x[i];
  }
  return quasilattice::compare(a, b, bound_);
}

double CompiledQuadratic::value(const long* x) const {
  double v = 0;
  for (Index i = 0; i < k_; ++i)
    for (Index j = 0; j < k_; ++j) {
      const std::size_t e = static_cast<std::size_t>(i * k_ + j);
      v += (static_cast<double>(p_[e]) + static_cast<double>(q_[e]) * kSqrt5) *
           static_cast<double>(x[i]) * static_cast<double>(x[j]);
    }
  return v / scale_.to_double();
}

}  // namespace quasilattice
