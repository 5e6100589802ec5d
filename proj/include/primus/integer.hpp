#pragma once

#include <gmpxx.h>

#include <string>

namespace primus {

/// Arbitrary-precision integer used for every ring coefficient.
using Integer = mpz_class;

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Extended gcd: returns g = s*a + t*b with g >= 0.
inline Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// Least nonnegative residue; modulus 0 leaves the value untouched.
inline Integer reduce_mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Unit test in Z (m == 0) or Z_m.
inline bool is_unit_mod(const Integer& a, const Integer& m) {
  if (m == 0) return abs(a) == 1;
  if (m == 1) return true;
  return gcd(a, m) == 1;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

}  // namespace primus
