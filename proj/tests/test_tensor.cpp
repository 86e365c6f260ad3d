#include <random>

#include "doctest.h"
#include "permzhu/fermion.hpp"
#include "permzhu/twist.hpp"

using namespace permzhu;

namespace {

const FreeFermion& F() { return FreeFermion::instance(); }

TensorState random_state(const TensorAlgebra& alg, std::mt19937& rng, Weight w) {
  std::uniform_int_distribution<int> num(-3, 3);
  TensorState s;
  for (const TensorMonomial& m : alg.basis_upto(w)) {
    int c = num(rng);
    if (c != 0) s.add(m, CycloScalar(static_cast<long>(c)));
  }
  return s;
}

}  // namespace

TEST_CASE("twist orders and roots") {
  TensorAlgebra t2(F(), 2), t3(F(), 3), t1(F(), 1);
  Twist g2(t2, TwistSpec{{2}, false});
  CHECK(g2.T0() == 2);
  CHECK(g2.T() == 2);
  CHECK(g2.root() == CycloScalar(-1L));

  Twist g3(t3, TwistSpec{{3}, false});
  CHECK(g3.T0() == 3);
  CHECK(g3.T() == 6);
  CHECK(g3.root() == CycloScalar::root_of_unity(6, 1));

  Twist plain(t1, TwistSpec{{1}, false});   // untwisted: h = sigma
  CHECK(plain.T0() == 1);
  CHECK(plain.T() == 2);
  Twist sigma(t1, TwistSpec{{1}, true});    // sigma-twisted: h = 1
  CHECK(sigma.T0() == 2);
  CHECK(sigma.T() == 1);

  TensorAlgebra t3b(F(), 3);
  Twist mixed(t3b, TwistSpec{{2, 1}, false});
  CHECK(mixed.T0() == 2);
  CHECK(mixed.T() == 2);
}

TEST_CASE("tensor product modes and Koszul signs") {
  TensorAlgebra alg(F(), 2);
  const Monomial psi = fermion_psi();
  State psi_s = State::of(psi);

  // (1 x 1)_n = delta_{n,-1} Id
  for (int n = -3; n <= 2; ++n) {
    TensorState got = alg.nth_product(alg.vacuum_state(), n, alg.vacuum_state());
    CHECK(got == ((n == -1) ? alg.vacuum_state() : TensorState::zero()));
  }

  // (psi x 1)_n (a x b) = (psi_n a) x b, no sign
  // (1 x psi)_n (a x b) = (-1)^{|a|} a x (psi_n b)
  for (const Monomial& a : F().basis_upto(Weight::from_int(2))) {
    for (const Monomial& b : F().basis_upto(Weight::from_halves(3))) {
      TensorState ab = TensorState::of(alg.make({a, b}));
      for (int n = -2; n <= 2; ++n) {
        TensorState left = alg.nth_product(TensorState::of(alg.one_tensor(psi, 1)), n, ab);
        TensorState expect_left;
        State mode_a = F().generator_mode(0, n, State::of(a));
        for (const auto& [m, c] : mode_a.terms()) expect_left.add(alg.make({m, b}), c);
        CHECK(left == expect_left);

        TensorState right = alg.nth_product(TensorState::of(alg.one_tensor(psi, 2)), n, ab);
        TensorState expect_right;
        State mode_b = F().generator_mode(0, n, State::of(b));
        for (const auto& [m, c] : mode_b.terms())
          expect_right.add(alg.make({a, m}), is_odd(a.parity) ? -c : c);
        CHECK(right == expect_right);
      }
    }
  }
  (void)psi_s;
}

TEST_CASE("g action on tensor monomials") {
  TensorAlgebra alg(F(), 2);
  Twist tw(alg, TwistSpec{{2}, false});
  const Monomial psi = fermion_psi();

  // psi x 1 -> 1 x psi with sign +1
  CHECK(tw.apply_g(TensorState::of(alg.one_tensor(psi, 1))) ==
        TensorState::of(alg.one_tensor(psi, 2)));
  // psi x psi -> -(psi x psi)
  TensorState pp = TensorState::of(alg.make({psi, psi}));
  CHECK(tw.apply_g(pp) == -pp);
}

TEST_CASE("g^k, sigma^2 and centrality") {
  std::mt19937 rng(99);
  for (int k : {2, 3}) {
    TensorAlgebra alg(F(), k);
    Twist tw(alg, TwistSpec{{k}, false});
    TensorState s = random_state(alg, rng, Weight::from_halves(5));

    TensorState gk = s;
    for (int i = 0; i < k; ++i) gk = tw.apply_g(gk);
    CHECK(gk == s);

    CHECK(tw.apply_sigma(tw.apply_sigma(s)) == s);
    CHECK(tw.apply_sigma(tw.apply_g(s)) == tw.apply_g(tw.apply_sigma(s)));

    // h has exact order T
    TensorState ht = s;
    for (int i = 0; i < tw.T(); ++i) ht = tw.apply_h(ht);
    CHECK(ht == s);
  }
}

TEST_CASE("h on psi x psi") {
  TensorAlgebra alg(F(), 2);
  Twist tw(alg, TwistSpec{{2}, false});
  TensorState pp = TensorState::of(alg.make({fermion_psi(), fermion_psi()}));
  CHECK(tw.apply_h(pp) == -pp);  // sigma fixes the even vector, g flips it
}

TEST_CASE("eigenprojector algebra") {
  std::mt19937 rng(1234);
  for (int k : {2, 3}) {
    TensorAlgebra alg(F(), k);
    Twist tw(alg, TwistSpec{{k}, false});
    TensorState s = random_state(alg, rng, Weight::from_halves(4));

    TensorState sum;
    for (int r = 0; r < tw.T(); ++r) {
      TensorState pr = tw.project(r, s);
      sum += pr;
      // h P_r = root^r P_r
      CHECK(tw.apply_h(pr) == pr * tw.root().pow(r));
      // P_r P_s = delta_{rs} P_r
      for (int r2 = 0; r2 < tw.T(); ++r2) {
        TensorState again = tw.project(r2, pr);
        CHECK(again == ((r2 == r) ? pr : TensorState::zero()));
      }
    }
    CHECK(sum == s);  // resolution of identity
  }
}

TEST_CASE("one-tensor orbits") {
  const Monomial psi = fermion_psi();

  TensorAlgebra t3(F(), 3);
  Twist g3(t3, TwistSpec{{3}, false});
  CHECK(g3.one_tensor_orbit(F().vacuum_state()) ==
        t3.vacuum_state() * CycloScalar(3L));
  CHECK_THROWS_AS(g3.one_tensor_orbit(State::of(psi)), std::invalid_argument);

  TensorAlgebra t2(F(), 2);
  Twist g2(t2, TwistSpec{{2}, false});
  TensorState tilde_psi = g2.one_tensor_orbit(State::of(psi));
  TensorState expect;
  expect.add(t2.one_tensor(psi, 1), CycloScalar(1L));
  expect.add(t2.one_tensor(psi, 2), CycloScalar(-1L));
  CHECK(tilde_psi == expect);
  // the odd orbit really is h-invariant
  CHECK(g2.apply_h(tilde_psi) == tilde_psi);

  State omega = F().conformal_vector();
  TensorState bar_omega = g2.one_tensor_orbit(omega);
  CHECK(bar_omega == t2.embed_at_slot(omega, 1) + t2.embed_at_slot(omega, 2));
  CHECK(bar_omega == t2.omega());
}

TEST_CASE("g, sigma, h are algebra automorphisms") {
  for (int k : {2, 3}) {
    TensorAlgebra alg(F(), k);
    Twist tw(alg, TwistSpec{{k}, false});
    auto basis = alg.basis_upto(Weight::from_halves(3));
    for (const TensorMonomial& u : basis) {
      for (const TensorMonomial& v : basis) {
        if (u.weight2 + v.weight2 > 3) continue;
        TensorState us = TensorState::of(u), vs = TensorState::of(v);
        for (int n = -2; n <= 1; ++n) {
          TensorState prod = alg.nth_product(us, n, vs);
          CHECK(alg.nth_product(tw.apply_g(us), n, tw.apply_g(vs)) == tw.apply_g(prod));
          CHECK(alg.nth_product(tw.apply_sigma(us), n, tw.apply_sigma(vs)) ==
                tw.apply_sigma(prod));
          CHECK(alg.nth_product(tw.apply_h(us), n, tw.apply_h(vs)) == tw.apply_h(prod));
        }
      }
    }
  }
}

TEST_CASE("tensor weight and parity bookkeeping") {
  TensorAlgebra alg(F(), 2);
  auto basis = alg.basis_upto(Weight::from_int(2));
  for (const TensorMonomial& u : basis) {
    for (const TensorMonomial& v : basis) {
      if (u.weight2 + v.weight2 > 4) continue;
      for (int n = -3; n <= 2; ++n) {
        TensorState p = alg.nth_product(TensorState::of(u), n, TensorState::of(v));
        for (const auto& [m, c] : p.terms()) {
          (void)c;
          CHECK(m.weight2 == u.weight2 + v.weight2 - 2 * n - 2);
          CHECK(m.parity == u.parity + v.parity);
        }
      }
    }
  }
}

TEST_CASE("tensor basis enumeration") {
  TensorAlgebra alg(F(), 2);
  // pairs of distinct-part partitions with total weight <= 2:
  // ([],[]), ([1],[]), ([],[1]), ([1],[1]), ([2],[]), ([],[2]),
  // ([2],[1]), ([1],[2]), ([2,1],[]), ([],[2,1])
  CHECK(alg.basis_upto(Weight::from_int(2)).size() == 10);
  auto b = alg.basis_upto(Weight::from_halves(5));
  for (size_t i = 1; i < b.size(); ++i) {
    CHECK(!(b[i] < b[i - 1]));
  }
  // mismatched k is rejected
  TensorAlgebra alg3(F(), 3);
  CHECK_THROWS_AS(alg.nth_product(alg.vacuum_state(), -1, alg3.vacuum_state()),
                  std::invalid_argument);
}

TEST_CASE("block cycle twist acts blockwise") {
  TensorAlgebra alg(F(), 3);
  Twist tw(alg, TwistSpec{{2, 1}, false});
  const Monomial psi = fermion_psi();
  // (psi, 1 | 1): block (1 2) swaps, slot 3 untouched
  TensorState s = TensorState::of(alg.one_tensor(psi, 1));
  CHECK(tw.apply_g(s) == TensorState::of(alg.one_tensor(psi, 2)));
  TensorState s3 = TensorState::of(alg.one_tensor(psi, 3));
  CHECK(tw.apply_g(s3) == s3);
  // odd factors in both blocks: no cross-block Koszul sign from the
  // block-diagonal permutation
  TensorState both = TensorState::of(alg.make({psi, Monomial{}, psi}));
  CHECK(tw.apply_g(both) == TensorState::of(alg.make({Monomial{}, psi, psi})));
}
