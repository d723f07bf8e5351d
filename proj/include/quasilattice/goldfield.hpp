#pragma once

// Exact arithmetic in Q and in the real quadratic field Q(sqrt5).
//
// Every projector, Gram matrix and window coordinate in this library lives in
// Q(sqrt5). GoldenScalar stores a + b*sqrt5 with canonical rationals a, b, so
// equality is structural and sign() is decided without floating point.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace quasilattice {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in Q(sqrt5)") {}
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "7", "-3/4", "0.25" or "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

/// The real number a + b*sqrt5 with a, b rational.
class GoldenScalar {
 public:
  GoldenScalar() = default;
  GoldenScalar(int v) : a_(v) {}  // NOLINT: integer literals in matrix code
  GoldenScalar(long v) : a_(v) {}  // NOLINT
  GoldenScalar(long long v) : a_(v) {}  // NOLINT
  GoldenScalar(Rational a) : a_(std::move(a)) {}  // NOLINT
  GoldenScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static GoldenScalar sqrt5() { return {Rational(0), Rational(1)}; }
  /// tau = (1 + sqrt5) / 2
  static GoldenScalar golden_ratio() {
    return {Rational(1, 2), Rational(1, 2)};
  }
  static GoldenScalar fraction(long num, long den) {
    return GoldenScalar(Rational(num, den));
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// Exact sign of the real embedding (sqrt5 > 0).
  int sign() const;
  /// Galois conjugate a - b*sqrt5.
  GoldenScalar conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - 5 b^2 (product with the conjugate).
  Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
  GoldenScalar inverse() const;
  GoldenScalar abs() const { return sign() < 0 ? -*this : *this; }

  /// Nearest double, computed without cancellation (relative error within a
  /// few ulp for every nonzero value).
  double to_double() const;

  /// "a", "b*sqrt5" or "a+b*sqrt5" with a, b written as p/q.
  std::string to_string() const;
  static GoldenScalar parse(std::string_view text);

  GoldenScalar& operator+=(const GoldenScalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  GoldenScalar& operator-=(const GoldenScalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  GoldenScalar& operator*=(const GoldenScalar& o);
  GoldenScalar& operator/=(const GoldenScalar& o) {
    return *this *= o.inverse();
  }

  friend GoldenScalar operator+(GoldenScalar x, const GoldenScalar& y) {
    return x += y;
  }
  friend GoldenScalar operator-(GoldenScalar x, const GoldenScalar& y) {
    return x -= y;
  }
  friend GoldenScalar operator*(GoldenScalar x, const GoldenScalar& y) {
    return x *= y;
  }
  friend GoldenScalar operator/(GoldenScalar x, const GoldenScalar& y) {
    return x /= y;
  }
  GoldenScalar operator-() const { return {-a_, -b_}; }
  GoldenScalar operator+() const { return *this; }

  friend bool operator==(const GoldenScalar& x, const GoldenScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Ordered by real value.
  friend std::strong_ordering operator<=>(const GoldenScalar& x,
                                          const GoldenScalar& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

 private:
  Rational a_;
  Rational b_;
};

std::ostream& operator<<(std::ostream& os, const GoldenScalar& x);

inline GoldenScalar conjugate(const GoldenScalar& x) { return x.conjugate(); }
inline int sign(const GoldenScalar& x) { return x.sign(); }
inline double to_double(const GoldenScalar& x) { return x.to_double(); }

}  // namespace quasilattice

// Lets GoldenScalar be the scalar type of Eigen dense matrices. Only the
// exact operations (+, -, *, /, ==) are used; nothing here needs a norm.
#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>

namespace Eigen {
template <>
struct NumTraits<quasilattice::GoldenScalar>
    : GenericNumTraits<quasilattice::GoldenScalar> {
  using Real = quasilattice::GoldenScalar;
  using NonInteger = quasilattice::GoldenScalar;
  using Literal = quasilattice::GoldenScalar;
  using Nested = quasilattice::GoldenScalar;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};
}  // namespace Eigen
