#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace permzhu {

// Arbitrary-precision exact rationals. mpq_class keeps gcd(num,den)=1 and
// den>0 canonically, which is what every equality check here relies on.
using Int = mpz_class;
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
  q.canonicalize();
  return q;
}

// Canonical "num/den" form, denominator always spelled out ("3/1", "-1/2").
inline std::string rational_to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Generalized binomial coefficient C(alpha, i) = alpha(alpha-1)...(alpha-i+1)/i!
// for rational alpha.  Needed because (1+z)^alpha expansions carry fractional
// exponents like wt(u)-1+r/T.
inline Rational binomial(const Rational& alpha, unsigned long i) {
  Rational num(1);
  for (unsigned long t = 0; t < i; ++t) {
    num *= alpha - Rational(static_cast<long>(t));
  }
  Rational fact(1);
  for (unsigned long t = 2; t <= i; ++t) fact *= Rational(static_cast<long>(t));
  return num / fact;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// k^e for integer e of either sign.
inline Rational rational_int_pow(long k, long e) {
  if (k == 0) throw std::invalid_argument("rational_int_pow: zero base");
  Int p = int_pow(Int(k), static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  return Rational(1) / Rational(p);
}

}  // namespace permzhu
