#include <map>

#include "doctest.h"
#include "permzhu/delta.hpp"
#include "permzhu/fermion.hpp"

using namespace permzhu;

namespace {

const FreeFermion& F() { return FreeFermion::instance(); }

// Independent expansion of exp(-sum_j a_j x^{j+1} d/dx) . x, written against
// a map representation rather than the library's dense vectors.
using Poly = std::map<int, Rational>;

Poly oracle_E(const std::vector<Rational>& a, const Poly& p, int order) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e == 0) continue;
    for (size_t j = 1; j <= a.size(); ++j) {
      int deg = e + static_cast<int>(j);
      if (deg > order) continue;
      Rational add = a[j - 1] * Rational(e) * c;
      if (add != 0) out[deg] += add;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

Poly oracle_flow(const std::vector<Rational>& a, int order) {
  Poly acc{{1, Rational(1)}};
  Poly term = acc;
  Rational nfact(1);
  for (int n = 1; n <= order; ++n) {
    term = oracle_E(a, term, order);
    nfact *= Rational(-n);
    if (term.empty()) break;
    for (const auto& [e, c] : term) acc[e] += c / nfact;
    // keep term as plain E^n x; the sign and factorial live in nfact
  }
  for (auto it = acc.begin(); it != acc.end();) it = (it->second == 0) ? acc.erase(it) : std::next(it);
  return acc;
}

Poly oracle_target(int k, int order) {
  Poly f;
  for (int i = 1; i <= std::min(order, k); ++i) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(i));
    f[i] = Rational(b) / Rational(k);
  }
  return f;
}

}  // namespace

TEST_CASE("a_j solver matches the defining series identity (oracle)") {
  for (int k = 1; k <= 5; ++k) {
    ACoeffs c = solve_a_coeffs(k, 8);
    REQUIRE(c.a.size() == 8);
    CHECK(oracle_flow(c.a, 9) == oracle_target(k, 9));
  }
}

TEST_CASE("a_j closed values") {
  ACoeffs c1 = solve_a_coeffs(1, 6);
  for (const Rational& a : c1.a) CHECK(a == 0);

  ACoeffs c2 = solve_a_coeffs(2, 6);
  CHECK(c2.at(1) == Rational(-1, 2));
  CHECK(c2.at(2) == Rational(1, 4));

  ACoeffs c3 = solve_a_coeffs(3, 6);
  CHECK(c3.at(1) == Rational(-1));
  CHECK(c3.at(2) == Rational(2, 3));
}

TEST_CASE("a_j solver rejects a broken coefficient (oracle smoke)") {
  ACoeffs c = solve_a_coeffs(2, 5);
  std::vector<Rational> broken = c.a;
  broken[1] += Rational(1, 7);
  CHECK(oracle_flow(c.a, 6) == oracle_target(2, 6));
  CHECK(oracle_flow(broken, 6) != oracle_target(2, 6));
}

TEST_CASE("library flow series agrees with the oracle") {
  for (int k : {2, 3, 4}) {
    ACoeffs c = solve_a_coeffs(k, 7);
    std::vector<Rational> flow = delta_flow_series(c.a, 8);
    Poly as_map;
    for (size_t e = 0; e < flow.size(); ++e)
      if (flow[e] != 0) as_map[static_cast<int>(e)] = flow[e];
    CHECK(as_map == oracle_flow(c.a, 8));
    CHECK(as_map == oracle_target(k, 8));
  }
}

TEST_CASE("Delta_k(1) on distinguished vectors") {
  for (int k : {1, 2, 3}) {
    ACoeffs c = solve_a_coeffs(k, 8);
    CHECK(apply_delta1(F(), c, F().vacuum_state()) == F().vacuum_state());
    // psi is primary of weight 1/2: Delta psi = k^{-1/2} psi
    State psi = State::of(fermion_psi());
    CycloScalar root =
        CycloScalar::sqrt_of_integer(static_cast<unsigned>(k)).inverse();
    CHECK(apply_delta1(F(), c, psi) == psi * root);
    CHECK(apply_delta1_inverse(F(), c, psi) == psi * root.inverse());
  }
  // k = 2 on omega (c = 1/2): omega/4 + |0>/64
  ACoeffs c2 = solve_a_coeffs(2, 8);
  State omega = F().conformal_vector();
  State expect = omega * CycloScalar(Rational(1, 4)) +
                 F().vacuum_state() * CycloScalar(Rational(1, 64));
  CHECK(apply_delta1(F(), c2, omega) == expect);
  // k = 3: omega/9 + a_2 (c/2) |0>/9 = omega/9 + |0>/54
  ACoeffs c3 = solve_a_coeffs(3, 8);
  CHECK(apply_delta1(F(), c3, omega) ==
        omega * CycloScalar(Rational(1, 9)) + F().vacuum_state() * CycloScalar(Rational(1, 54)));
}

TEST_CASE("Delta_1(1) is the identity") {
  ACoeffs c1 = solve_a_coeffs(1, 8);
  for (const Monomial& m : F().basis_upto(Weight::from_int(3))) {
    CHECK(apply_delta1(F(), c1, State::of(m)) == State::of(m));
  }
}

TEST_CASE("Delta round trip and weight filtration") {
  for (int k : {2, 3}) {
    ACoeffs c = solve_a_coeffs(k, 8);
    for (const Monomial& m : F().basis_upto(Weight::from_int(4))) {
      State s = State::of(m);
      State d = apply_delta1(F(), c, s);
      // filtration: weights never increase
      CHECK(d.max_weight() <= m.weight());
      CHECK(apply_delta1_inverse(F(), c, d) == s);
      CHECK(apply_delta1(F(), c, apply_delta1_inverse(F(), c, s)) == s);
    }
  }
}

TEST_CASE("truncation guard") {
  ACoeffs tiny = solve_a_coeffs(2, 1);
  State heavy = State::of(fermion_monomial({4, 3}));  // weight 6
  CHECK_THROWS_AS(apply_delta1(F(), tiny, heavy), std::invalid_argument);
}

TEST_CASE("conjugation identity at z = 1") {
  for (int k : {2, 3}) {
    ACoeffs c = solve_a_coeffs(k, 8);
    for (const State& u :
         {F().vacuum_state(), State::of(fermion_psi()), F().conformal_vector()}) {
      ConjugationReport r = verify_conjugation(F(), c, u, 2, Weight::from_halves(3));
      INFO(r.mismatch);
      CHECK(r.ok);
      CHECK(r.coefficients_checked > 0);
    }
  }
}

TEST_CASE("conjugation check detects wrong coefficients") {
  ACoeffs c = solve_a_coeffs(2, 8);
  c.a[0] += Rational(1, 5);  // break a_1
  ConjugationReport r =
      verify_conjugation(F(), c, F().conformal_vector(), 2, Weight::from_halves(2));
  CHECK_FALSE(r.ok);
  CHECK(!r.mismatch.empty());
}
