#include <memory>

#include "doctest.h"
#include "permzhu/fermion.hpp"
#include "permzhu/iso.hpp"

using namespace permzhu;

namespace {

const FreeFermion& F() { return FreeFermion::instance(); }

// the Remark's y_j normalization: k-term h-orbit of x_{u,v}^{1,1+j}
TensorState remark_orbit(const Twist& tw, const Monomial& u, const Monomial& v, int j) {
  const TensorAlgebra& alg = tw.algebra();
  TensorState acc;
  TensorState cur = TensorState::of(alg.two_tensor(u, 1, v, 1 + j));
  for (int m = 0; m < alg.k(); ++m) {
    acc += cur;
    if (m + 1 < alg.k()) cur = tw.apply_h(cur);
  }
  return acc;
}

// y_j = eps_v * sum_s (1/k)(eta^{-js}-1) orbit1(R_s), eps_v = -1 for even v,
// +1 for odd v (oracle-frozen orientation of the Remark identity)
TensorState remark_equivalent(const Twist& tw, const Monomial& u, const Monomial& v, int j) {
  const int k = tw.algebra().k();
  const CycloScalar eta = CycloScalar::root_of_unity(static_cast<unsigned>(k), 1);
  const long eps = is_odd(v.parity) ? 1 : -1;
  TensorState e;
  for (int s = 1; s < k; ++s) {
    State r = remark_residue_kernel(F(), u, v, s, k);
    if (r.is_zero()) continue;
    CycloScalar c = (eta.pow(-static_cast<long>(j) * s) - CycloScalar(1L)) *
                    CycloScalar(Rational(1, k)) * CycloScalar(eps);
    e += tw.one_tensor_orbit(r) * c;
  }
  return e;
}

}  // namespace

TEST_CASE("generator classes") {
  TensorAlgebra a3(F(), 3);
  Twist g3(a3, TwistSpec{{3}, false});
  auto c3 = generator_classes(g3, Weight::from_halves(1));
  REQUIRE(c3.size() == 1);  // psi is odd: excluded for odd k
  CHECK(c3[0].u.is_vacuum());
  CHECK(c3[0].vec == a3.vacuum_state() * CycloScalar(3L));

  TensorAlgebra a2(F(), 2);
  Twist g2(a2, TwistSpec{{2}, false});
  auto c2 = generator_classes(g2, Weight::from_halves(1));
  REQUIRE(c2.size() == 2);
  CHECK(c2[0].u.is_vacuum());
  CHECK(c2[1].u == fermion_psi());
  CHECK(c2[1].parity == Parity::odd);

  auto c0 = generator_classes(g2, Weight::from_int(0));
  REQUIRE(c0.size() == 1);
  CHECK(c0[0].vec == a2.vacuum_state() * CycloScalar(2L));
}

TEST_CASE("odd orbit sums vanish in A_g for odd k") {
  TensorAlgebra a3(F(), 3);
  Twist tw(a3, TwistSpec{{3}, false});
  OSpan span = build_ospan(tw, Weight::from_int(3), Weight::from_int(4), 2);
  for (const Monomial& v : {fermion_psi(), fermion_monomial({2})}) {
    TensorState plain;
    for (int a = 1; a <= 3; ++a) plain.add(a3.one_tensor(v, a), CycloScalar::one());
    CHECK(span.contains(plain));
  }
}

TEST_CASE("two-tensor reduction: mechanical route") {
  for (int k : {2, 3}) {
    TensorAlgebra alg(F(), k);
    Twist tw(alg, TwistSpec{{k}, false});
    OSpan span = build_ospan(tw, Weight::from_int(3), Weight::from_int(4), 2);
    for (const Monomial& u : F().basis_upto(Weight::from_int(1))) {
      for (const Monomial& v : F().basis_upto(Weight::from_int(1))) {
        if (u.weight2 + v.weight2 > 2) continue;
        for (int j = 1; j < k; ++j) {
          TwoTensorReduction red = reduce_two_tensor(tw, u, v, j);
          // the equivalent is congruent and purely <=1-tensor
          CHECK(span.contains(red.orbit2 - red.one_tensor_equiv));
          for (const auto& [m, c] : red.one_tensor_equiv.terms()) {
            (void)c;
            CHECK(m.nontrivial_slots() <= 1);
          }
        }
      }
    }
    // the spec's psi,psi case in particular
    TwoTensorReduction red = reduce_two_tensor(tw, fermion_psi(), fermion_psi(), 1);
    CHECK(span.contains(red.orbit2 - red.one_tensor_equiv));
  }
}

TEST_CASE("two-tensor reduction: Remark closed form (oracle-frozen)") {
  // y_j == eps_v sum_s (1/k)(eta^{-js}-1) u_s as O-span membership, for all
  // generator pairs with weight sum <= 2
  for (int k : {2, 3}) {
    TensorAlgebra alg(F(), k);
    Twist tw(alg, TwistSpec{{k}, false});
    OSpan span = build_ospan(tw, Weight::from_int(3), Weight::from_int(4), 2);
    auto classes = generator_classes(tw, Weight::from_int(2));
    long cases = 0;
    for (const GeneratorClass& cu : classes) {
      for (const GeneratorClass& cv : classes) {
        if (cu.u.weight2 + cv.u.weight2 > 4) continue;
        for (int j = 1; j < k; ++j) {
          TensorState lhs = remark_orbit(tw, cu.u, cv.u, j);
          TensorState rhs = remark_equivalent(tw, cu.u, cv.u, j);
          CHECK(span.contains(lhs - rhs));
          ++cases;
        }
      }
    }
    CHECK(cases > 0);
  }
  // even k covers the odd-parity generator pairs too
  {
    TensorAlgebra alg(F(), 2);
    Twist tw(alg, TwistSpec{{2}, false});
    OSpan span = build_ospan(tw, Weight::from_int(3), Weight::from_int(4), 2);
    const Monomial psi = fermion_psi();
    const Monomial heavy = fermion_monomial({2});
    for (auto [u, v] : std::vector<std::pair<Monomial, Monomial>>{
             {psi, psi}, {psi, heavy}, {heavy, psi}, {fermion_monomial({}), psi}}) {
      CHECK(span.contains(remark_orbit(tw, u, v, 1) - remark_equivalent(tw, u, v, 1)));
    }
  }
}

TEST_CASE("phi on generators") {
  ACoeffs c2 = solve_a_coeffs(2, 8);
  ACoeffs c3 = solve_a_coeffs(3, 8);

  GeneratorClass vac{Monomial{}, Parity::even, TensorState()};
  CHECK(phi_on_generator(F(), vac, c2) == F().vacuum_state() * CycloScalar(2L));
  CHECK(phi_on_generator(F(), vac, c3) == F().vacuum_state() * CycloScalar(3L));

  GeneratorClass psi{fermion_psi(), Parity::odd, TensorState()};
  CHECK(phi_on_generator(F(), psi, c2) ==
        State::of(fermion_psi()) * CycloScalar::sqrt_of_integer(2));

  // u = psi_{-2}psi_{-1}|0> = 2 omega: 3 Delta_3(2 omega) = (1/3)u + (1/9)|0>
  GeneratorClass om{fermion_monomial({2, 1}), Parity::even, TensorState()};
  State expect = State::of(fermion_monomial({2, 1})) * CycloScalar(Rational(1, 3)) +
                 F().vacuum_state() * CycloScalar(Rational(1, 9));
  CHECK(phi_on_generator(F(), om, c3) == expect);
}

TEST_CASE("psi map") {
  TensorAlgebra a2(F(), 2);
  Twist tw(a2, TwistSpec{{2}, false});
  ACoeffs c2 = solve_a_coeffs(2, 8);

  CHECK(psi_on_state(tw, c2, F().vacuum_state()) == a2.vacuum_state());

  TensorState img = psi_on_state(tw, c2, State::of(fermion_psi()));
  CycloScalar half_sqrt2 = CycloScalar::sqrt_of_integer(2) * CycloScalar(Rational(1, 2));
  TensorState expect;
  expect.add(a2.one_tensor(fermion_psi(), 1), half_sqrt2);
  expect.add(a2.one_tensor(fermion_psi(), 2), -half_sqrt2);
  CHECK(img == expect);
}

TEST_CASE("well-definedness and homomorphism sweeps") {
  OspanBuilder builder = direct_ospan_builder(2);

  {
    IsoSession s(F(), 2, Weight::from_int(2), Weight::from_int(4), builder);
    CheckReport wd = s.verify_well_defined(Weight::from_int(4));
    INFO(wd.counterexample);
    CHECK(wd.pass);
    // every parity case of the even-k proof is exercised
    for (long n : wd.parity_cases) CHECK(n > 0);

    CheckReport hom = s.verify_homomorphism(Weight::from_int(2));
    INFO(hom.counterexample);
    CHECK(hom.pass);
    for (long n : hom.parity_cases) CHECK(n > 0);
  }
  {
    IsoSession s(F(), 3, Weight::from_int(1), Weight::from_int(3), builder);
    CheckReport wd = s.verify_well_defined(Weight::from_int(3));
    INFO(wd.counterexample);
    CHECK(wd.pass);
    CheckReport hom = s.verify_homomorphism(Weight::from_int(1));
    CHECK(hom.pass);
  }
}

TEST_CASE("iso matrices") {
  OspanBuilder builder = direct_ospan_builder(2);

  // k = 1 degenerate: phi is the identity on A(F)
  {
    IsoSession s(F(), 1, Weight::from_int(1), Weight::from_int(3), builder);
    IsoReport r = s.build_iso_matrix();
    CHECK(r.dim_source == 1);
    CHECK(r.dim_target == 1);
    CHECK(r.phi[0][0] == CycloScalar::one());
    CHECK(r.pass());
  }
  // k = 3: both quotients are the ground field
  {
    IsoSession s(F(), 3, Weight::from_int(1), Weight::from_int(3), builder);
    IsoReport r = s.build_iso_matrix();
    INFO(r.counterexample);
    CHECK(r.dim_source == 1);
    CHECK(r.dim_target == 1);
    CHECK(!(r.phi[0][0] == CycloScalar::zero()));
    CHECK(r.pass());
  }
  // k = 2: A_g(F x F) = A_sigma(F), dimension d_sigma = 2
  {
    IsoSession s(F(), 2, Weight::from_int(2), Weight::from_int(4), builder);
    IsoReport r = s.build_iso_matrix();
    INFO(r.counterexample);
    CHECK(r.dim_source == 2);
    CHECK(r.dim_target == 2);
    CHECK(r.invertible);
    CHECK(r.inverse_roundtrip);
    CHECK(r.pass());
    // unit maps to unit
    size_t sid = s.source_quotient().identity_index();
    size_t tid = s.target_quotient().identity_index();
    for (size_t row = 0; row < r.dim_target; ++row) {
      CHECK(r.phi[row][sid] == (row == tid ? CycloScalar::one() : CycloScalar::zero()));
    }
  }
}

TEST_CASE("disjoint cycle corollary") {
  OspanBuilder builder = direct_ospan_builder(2);

  CorollaryReport single = general_cycle_type(F(), {1}, Weight::from_int(1), Weight::from_int(3),
                                              builder);
  CHECK(single.dim == 1);
  CHECK(single.expected == 1);
  CHECK(single.pass);

  CorollaryReport mixed = general_cycle_type(F(), {2, 1}, Weight::from_halves(3),
                                             Weight::from_halves(7), builder);
  CHECK(mixed.dim == 2);  // d_sigma * dim A(F)
  CHECK(mixed.expected == 2);
  CHECK(mixed.per_cycle_dims ==
        std::vector<std::pair<int, size_t>>{{2, 2}, {1, 1}});
  CHECK(mixed.pass);

  CorollaryReport three = general_cycle_type(F(), {3}, Weight::from_int(1), Weight::from_int(3),
                                             builder);
  CHECK(three.dim == 1);
  CHECK(three.pass);
}
