#include "quasilattice/goldfield.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

namespace quasilattice {

namespace {

constexpr double kSqrt5 = 2.2360679774997896964;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw ParseError("malformed number '" + std::string(whole) + "'");
  return BigInt(std::string(digits));
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

// Unsigned decimal such as "12", "0.25", "3e-2".
Rational parse_unsigned_decimal(std::string_view s, std::string_view whole) {
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view e = s.substr(epos + 1);
    bool neg = false;
    if (!e.empty() && (e.front() == '+' || e.front() == '-')) {
      neg = e.front() == '-';
      e.remove_prefix(1);
    }
    exponent = static_cast<long>(parse_integer(e, whole).convert_to<long>());
    if (neg) exponent = -exponent;
    s = s.substr(0, epos);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(s);
  }
  Rational r(parse_integer(digits, whole));
  if (exponent > 0) r *= Rational(pow10(exponent));
  if (exponent < 0) r /= Rational(pow10(-exponent));
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s = trim(s.substr(1));
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)), text);
    BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  } else {
    r = parse_unsigned_decimal(s, text);
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

int GoldenScalar::sign() const {
  const int sa = a_.sign();
  const int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the term with the larger square dominates.
  return (a_ * a_ - 5 * b_ * b_).sign() > 0 ? sa : sb;
}

GoldenScalar& GoldenScalar::operator*=(const GoldenScalar& o) {
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ *= o.a_;
    return *this;
  }
  Rational a = a_ * o.a_ + 5 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

GoldenScalar GoldenScalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  const Rational n = norm();
  return {a_ / n, -b_ / n};
}

double GoldenScalar::to_double() const {
  const double a = a_.convert_to<double>();
  const double b = b_.convert_to<double>();
  if (a_.sign() * b_.sign() >= 0) return a + b * kSqrt5;
  // a + b sqrt5 = (a^2 - 5 b^2) / (a - b sqrt5); the denominator has no
  // cancellation when a and b have opposite signs.
  return norm().convert_to<double>() / (a - b * kSqrt5);
}

std::string GoldenScalar::to_string() const {
  if (b_.is_zero()) return quasilattice::to_string(a_);
  std::string coeff;
  const Rational mag = b_.sign() < 0 ? Rational(-b_) : b_;
  if (mag != 1) coeff = quasilattice::to_string(mag) + "*";
  coeff += "sqrt5";
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + coeff;
  return quasilattice::to_string(a_) + (b_.sign() < 0 ? "-" : "+") + coeff;
}

GoldenScalar GoldenScalar::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')')
    s = trim(s.substr(1, s.size() - 2));
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  if (compact.empty()) throw ParseError("empty Q(sqrt5) literal");

  GoldenScalar result;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    int term_sign = 1;
    if (compact[pos] == '+' || compact[pos] == '-') {
      term_sign = compact[pos] == '-' ? -1 : 1;
      ++pos;
    }
    // A term ends at the next +/- that is not part of an exponent.
    std::size_t end = pos;
    while (end < compact.size()) {
      const char c = compact[end];
      if ((c == '+' || c == '-') && end > pos &&
          compact[end - 1] != 'e' && compact[end - 1] != 'E')
        break;
      ++end;
    }
    std::string_view term(compact.data() + pos, end - pos);
    if (term.empty()) throw ParseError("malformed Q(sqrt5) literal '" + std::string(text) + "'");
    bool irrational = false;
    for (std::string_view root : {"sqrt(5)", "sqrt5"}) {
      if (term.size() >= root.size() &&
          term.substr(term.size() - root.size()) == root) {
        term.remove_suffix(root.size());
        irrational = true;
        break;
      }
    }
    Rational coeff(1);
    if (irrational) {
      if (!term.empty() && term.back() == '*') term.remove_suffix(1);
      if (!term.empty()) coeff = parse_rational(term);
    } else {
      coeff = parse_rational(term);
    }
    if (term_sign < 0) coeff = -coeff;
    if (irrational)
      result += GoldenScalar(Rational(0), coeff);
    else
      result += GoldenScalar(coeff);
    pos = end;
  }
  return result;
}

std::ostream& operator<<(std::ostream& os, const GoldenScalar& x) {
  return os << x.to_string();
}

}  // namespace quasilattice
