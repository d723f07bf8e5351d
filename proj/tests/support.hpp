#pragma once

// Shared fixtures: circulant-style projector patterns for the catalog
// clusters, written out entry by entry, and small vector helpers.

#include <array>
#include <initializer_list>

#include "quasilattice/generator.hpp"

namespace fixtures {

using namespace quasilattice;

inline GoldenScalar q(long num, long den = 1) { return GoldenScalar::fraction(num, den); }
inline GoldenScalar tau() { return GoldenScalar::golden_ratio(); }
inline GoldenScalar tau_c() { return tau().conjugate(); }
inline GoldenScalar root5() { return GoldenScalar::sqrt5(); }

inline GoldenVector gvec(std::initializer_list<GoldenScalar> xs) {
  GoldenVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline IntVector ivec(std::initializer_list<long> xs) {
  IntVector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v(i++) = x;
  return v;
}

inline GoldenVector to_golden(const IntVector& v) {
  GoldenVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = GoldenScalar(Rational(v(i)));
  return out;
}

// Pattern letters: 'a' alpha, 'b' beta, 'c' gamma; uppercase negates.
template <std::size_t K>
GoldenMatrix pattern_matrix(const std::array<const char*, K>& rows, const GoldenScalar& a,
                            const GoldenScalar& b, const GoldenScalar& c) {
  GoldenMatrix m(static_cast<Index>(K), static_cast<Index>(K));
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) {
      const char ch = rows[i][j];
      const GoldenScalar& v = (ch == 'a' || ch == 'A') ? a : (ch == 'b' || ch == 'B') ? b : c;
      m(static_cast<Index>(i), static_cast<Index>(j)) = (ch >= 'A' && ch <= 'Z') ? -v : v;
    }
  return m;
}

inline GoldenMatrix decagon_pattern(const GoldenScalar& a, const GoldenScalar& b,
                                    const GoldenScalar& c) {
  return pattern_matrix<5>({"abccb", "babcc", "cbabc", "ccbab", "bccba"}, a, b, c);
}

inline GoldenMatrix icosahedron_pattern(const GoldenScalar& a, const GoldenScalar& b) {
  return pattern_matrix<6>(
      {"abbbbb", "babBBb", "bbabBB", "bBbabB", "bBBbab", "bbBBba"}, a, b, b);
}

inline GoldenMatrix dodecahedron_pattern(const GoldenScalar& a, const GoldenScalar& b,
                                         const GoldenScalar& c) {
  return pattern_matrix<10>({"abccbcbcCC", "babccCcbcC", "cbabcCCcbc",
                             "ccbabcCCcb", "bccbabcCCc", "cCCcbacBBc",
                             "bcCCccacBB", "cbcCCBcacB", "CcbcCBBcac",
                             "CCcbccBBca"},
                            a, b, c);
}

}  // namespace fixtures
