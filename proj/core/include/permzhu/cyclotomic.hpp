#pragma once

#include <complex>
#include <string>
#include <vector>

#include "permzhu/rational.hpp"

namespace permzhu {

// An element of the cyclotomic field Q(zeta_M), stored on the power basis
// 1, zeta, ..., zeta^{phi(M)-1} reduced modulo the M-th cyclotomic polynomial.
// The reduced form is unique, so equality is coefficient-wise.  Elements of
// different orders are compared and combined after embedding both into
// Q(zeta_lcm) via zeta_m = zeta_lcm^{lcm/m}.
//
// Rationals are the order M=1 case.  All operations are exact.
class CycloScalar {
 public:
  CycloScalar() : order_(1), coeffs_(1, Rational(0)) {}
  explicit CycloScalar(const Rational& q) : order_(1), coeffs_(1, q) {}
  explicit CycloScalar(long n) : order_(1), coeffs_(1, Rational(n)) {}
  CycloScalar(unsigned order, std::vector<Rational> coeffs);

  static CycloScalar zero() { return CycloScalar(); }
  static CycloScalar one() { return CycloScalar(1L); }

  // zeta_M^a in canonical reduced form (a may be any integer).
  static CycloScalar root_of_unity(unsigned order, long a);

  // Exact square root of a positive integer k, represented in Q(zeta_{4k})
  // through the quadratic Gauss sum G = sum_a zeta_{4k}^{a^2}:
  // sqrt(k) = G / (2 (1 + zeta_{4k}^k)).  Embeds to the positive real root.
  static CycloScalar sqrt_of_integer(unsigned k);

  unsigned order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  // Rational value; throws if the element is not rational.
  Rational rational_value() const;

  CycloScalar promoted(unsigned new_order) const;  // requires order | new_order

  CycloScalar operator-() const;
  CycloScalar operator+(const CycloScalar& o) const;
  CycloScalar operator-(const CycloScalar& o) const;
  CycloScalar operator*(const CycloScalar& o) const;
  CycloScalar& operator+=(const CycloScalar& o) { return *this = *this + o; }
  CycloScalar& operator-=(const CycloScalar& o) { return *this = *this - o; }
  CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }

  CycloScalar inverse() const;  // throws std::domain_error on zero
  CycloScalar operator/(const CycloScalar& o) const { return *this * o.inverse(); }
  CycloScalar pow(long e) const;

  bool operator==(const CycloScalar& o) const;
  bool operator!=(const CycloScalar& o) const { return !(*this == o); }

  // Numerical embedding at zeta_M = exp(2 pi i / M).  Diagnostic only; no
  // exact decision is ever based on it.
  std::complex<double> embed() const;

  std::string to_string() const;

 private:
  unsigned order_;
  std::vector<Rational> coeffs_;  // size phi(order_)
};

inline CycloScalar operator*(const Rational& q, const CycloScalar& x) {
  return CycloScalar(q) * x;
}

unsigned euler_phi(unsigned m);

// Coefficients of the M-th cyclotomic polynomial (ascending, monic, integer).
const std::vector<Int>& cyclotomic_polynomial(unsigned m);

}  // namespace permzhu
