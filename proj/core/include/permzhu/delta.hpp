#pragma once

#include <string>
#include <vector>

#include "permzhu/series.hpp"
#include "permzhu/vosa.hpp"

namespace permzhu {

// Coefficients a_1..a_J of Delta_k, determined order by order from
// exp(-sum_j a_j x^{j+1} d/dx) . x = ((1+x)^k - 1)/k.
struct ACoeffs {
  int k = 1;
  int truncation = 0;            // J
  std::vector<Rational> a;       // a[j-1] = a_j

  const Rational& at(int j) const { return a.at(static_cast<size_t>(j - 1)); }
};

ACoeffs solve_a_coeffs(int k, int truncation);

// exp(-sum_j a_j x^{j+1} d/dx) . x through x^order (ascending coefficients,
// index = exponent).  Exposed so the defining identity can be checked
// directly against the closed-form target.
std::vector<Rational> delta_flow_series(const std::vector<Rational>& a, int order);
// ((1+x)^k - 1)/k through x^order.
std::vector<Rational> delta_target_series(int k, int order);

// Delta_k(1) = exp(sum_j a_j L(j)) k^{-L(0)} and its inverse
// k^{L(0)} exp(-sum_j a_j L(j)).  Both are weight-filtered and exact; the
// k^{-L(0)} factor on half-integer weights uses sqrt_of_integer(k), so images
// stay inside Q(zeta_{4k}).  Requires truncation >= max weight of s.
State apply_delta1(const VosaSpec& alg, const ACoeffs& coeffs, const State& s);
State apply_delta1_inverse(const VosaSpec& alg, const ACoeffs& coeffs, const State& s);

// Delta_k(1+z0) u as a truncated series in z0 (exponents >= 0).
StateSeries delta_at_one_plus_z(const VosaSpec& alg, const ACoeffs& coeffs, const State& u,
                                int max_exp);

struct ConjugationReport {
  bool ok = true;
  long coefficients_checked = 0;
  std::string mismatch;  // empty when ok
};

// Coefficientwise comparison, exact, of
//   Delta_k(1) Y(u, z0) Delta_k(1)^{-1}  vs  Y(Delta_k(1+z0)u, (1+z0)^{1/k}-1)
// applied to every basis state of weight <= test_weight, through z0^order.
ConjugationReport verify_conjugation(const VosaSpec& alg, const ACoeffs& coeffs, const State& u,
                                     int order, Weight test_weight);

}  // namespace permzhu
