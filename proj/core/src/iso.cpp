#include "permzhu/iso.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace permzhu {

namespace {

// splits into (at most one nontrivial slot, exactly two nontrivial slots)
std::pair<TensorState, TensorState> split_by_tensor_rank(const TensorState& s) {
  TensorState one, two;
  for (const auto& [m, c] : s.terms()) {
    size_t nt = m.nontrivial_slots();
    if (nt <= 1) {
      one.add(m, c);
    } else if (nt == 2) {
      two.add(m, c);
    } else {
      throw std::logic_error("unexpected >=3-tensor component " + label(m));
    }
  }
  return {one, two};
}

struct Orbit2Term {
  Monomial p, q;
  int offset = 1;
  CycloScalar coeff;
};

// X = sum coeff * full_orbit_sum(x_{p,q}^{1,1+offset}); exact greedy peel.
std::vector<Orbit2Term> decompose_two_tensor_orbits(const Twist& twist, TensorState x) {
  const TensorAlgebra& alg = twist.algebra();
  std::vector<Orbit2Term> out;
  while (!x.is_zero()) {
    const auto& [m, c] = *x.terms().begin();
    int a = 0, b = 0;
    for (int i = 1; i <= alg.k(); ++i) {
      if (!m.factors[static_cast<size_t>(i - 1)].is_vacuum()) {
        if (a == 0) {
          a = i;
        } else {
          b = i;
        }
      }
    }
    Orbit2Term t;
    t.p = m.factors[static_cast<size_t>(a - 1)];
    t.q = m.factors[static_cast<size_t>(b - 1)];
    t.offset = b - a;
    TensorState orbit = twist.full_orbit_sum(alg.two_tensor(t.p, 1, t.q, 1 + t.offset));
    CycloScalar nu = orbit.coeff(m);
    if (nu.is_zero())
      throw CutoffError("two-tensor component " + label(m) +
                        " is not h-invariant; cannot decompose over orbit sums");
    t.coeff = c * nu.inverse();
    x -= orbit * t.coeff;
    out.push_back(std::move(t));
  }
  return out;
}

struct Orbit1Term {
  Monomial u;
  CycloScalar coeff;
};

// X = sum coeff * one_tensor_orbit(u); exact greedy peel over the Lemma
// spanning vectors (plain orbit for even u, alternating for odd u).
std::vector<Orbit1Term> decompose_one_tensor_orbits(const Twist& twist, TensorState x) {
  const TensorAlgebra& alg = twist.algebra();
  std::vector<Orbit1Term> out;
  while (!x.is_zero()) {
    const auto& [m, c] = *x.terms().begin();
    Orbit1Term t;
    if (m.nontrivial_slots() == 0) {
      t.u = Monomial{};
      TensorState orbit = twist.one_tensor_orbit(State::of(t.u));
      t.coeff = c * orbit.coeff(m).inverse();
      x -= orbit * t.coeff;
    } else {
      int a = 0;
      for (int i = 1; i <= alg.k(); ++i) {
        if (!m.factors[static_cast<size_t>(i - 1)].is_vacuum()) {
          a = i;
          break;
        }
      }
      t.u = m.factors[static_cast<size_t>(a - 1)];
      TensorState orbit = twist.one_tensor_orbit(State::of(t.u));
      CycloScalar nu = orbit.coeff(m);
      if (nu.is_zero())
        throw CutoffError("one-tensor component " + label(m) +
                          " does not lie on a spanning orbit");
      t.coeff = c * nu.inverse();
      x -= orbit * t.coeff;
    }
    out.push_back(std::move(t));
  }
  return out;
}

int parity_case_index(Parity a, Parity b) {
  return (is_odd(a) ? 2 : 0) + (is_odd(b) ? 1 : 0);
}

}  // namespace

std::vector<GeneratorClass> generator_classes(const Twist& twist, Weight bound) {
  const TensorAlgebra& alg = twist.algebra();
  const bool even_k = alg.k() % 2 == 0;
  std::vector<GeneratorClass> out;
  for (const Monomial& u : alg.base().basis_upto(bound)) {
    if (is_odd(u.parity) && !even_k) continue;  // those orbit classes vanish
    GeneratorClass c;
    c.u = u;
    c.parity = u.parity;
    c.vec = twist.one_tensor_orbit(State::of(u));
    out.push_back(std::move(c));
  }
  return out;
}

State remark_residue_kernel(const VosaSpec& base, const Monomial& u, const Monomial& v, int s,
                            int k) {
  Rational alpha(u.weight2, 2);
  alpha.canonicalize();
  Rational sk(s, k);
  sk.canonicalize();
  alpha += sk - 1;
  State out;
  const long imax = (u.weight2 + v.weight2) / 2;
  for (long i = 0; i <= imax; ++i) {
    Rational c = binomial(alpha, static_cast<unsigned long>(i));
    if (c == 0) continue;
    State term = base.nth_product(u, static_cast<std::int32_t>(i - 1), v);
    if (!term.is_zero()) out += term * CycloScalar(c);
  }
  return out;
}

TwoTensorReduction reduce_two_tensor(const Twist& twist, const Monomial& u, const Monomial& v,
                                     int offset_j) {
  const TensorAlgebra& alg = twist.algebra();
  const int k = alg.k();
  const int T = twist.T();
  if (offset_j < 1 || offset_j >= k)
    throw std::invalid_argument("reduce_two_tensor: offset must lie in 1..k-1");

  TwoTensorReduction red;
  red.orbit2 = twist.full_orbit_sum(alg.two_tensor(u, 1, v, 1 + offset_j));
  if (red.orbit2.is_zero()) return red;  // class vanishes outright
  if (u.is_vacuum() || v.is_vacuum()) {
    // degenerate: the orbit already consists of <=1-tensor vectors
    red.one_tensor_equiv = red.orbit2;
    return red;
  }

  const TensorState u1 = TensorState::of(alg.one_tensor(u, 1));
  const TensorState v1 = TensorState::of(alg.one_tensor(v, 1));

  // Relations (T P_r u^1) o_g (T P_{T-r} v^1) in O_g; they exhaust the
  // identifications between 2-tensor and 1-tensor orbits at this weight.
  std::map<TensorMonomial, int> cols;
  auto to_vec = [&cols](const TensorState& s) {
    SparseVec v;
    std::map<int, CycloScalar> tmp;
    for (const auto& [m, c] : s.terms()) {
      auto it = cols.find(m);
      if (it == cols.end()) it = cols.emplace(m, static_cast<int>(cols.size())).first;
      tmp.emplace(it->second, c);
    }
    return sparse_from_map(tmp);
  };

  std::vector<TensorState> rel_two, rel_one;
  for (int r = 1; r < T; ++r) {
    TensorState ur = twist.project(r, u1) * CycloScalar(static_cast<long>(T));
    if (ur.is_zero()) continue;
    TensorState vr = twist.project(T - r, v1) * CycloScalar(static_cast<long>(T));
    if (vr.is_zero()) continue;
    TensorState w = circle_g(twist, ur, vr);
    auto [one, two] = split_by_tensor_rank(w);
    rel_two.push_back(std::move(two));
    rel_one.push_back(std::move(one));
  }

  // First pass assigns column ids to every 2-tensor monomial in sight so the
  // sparse solve is well-typed.
  for (const TensorState& s : rel_two) to_vec(s);
  RrefSolver solver;
  std::vector<size_t> accepted;
  for (size_t i = 0; i < rel_two.size(); ++i) {
    if (solver.insert(to_vec(rel_two[i]))) accepted.push_back(i);
  }
  auto combo = solver.solve(to_vec(red.orbit2));
  if (!combo)
    throw CutoffError("reduce_two_tensor: orbit of " + label(u) + "," + label(v) + " offset " +
                      std::to_string(offset_j) + " not expressible over eigen relations");
  TensorState equiv;
  for (size_t t = 0; t < accepted.size(); ++t) {
    if ((*combo)[t].is_zero()) continue;
    equiv -= rel_one[accepted[t]] * (*combo)[t];
  }
  red.one_tensor_equiv = std::move(equiv);
  return red;
}

State phi_on_generator(const VosaSpec& base, const GeneratorClass& c, const ACoeffs& coeffs) {
  return apply_delta1(base, coeffs, State::of(c.u)) * CycloScalar(static_cast<long>(coeffs.k));
}

TensorState psi_on_state(const Twist& twist, const ACoeffs& coeffs, const State& u) {
  const TensorAlgebra& alg = twist.algebra();
  const int k = alg.k();
  State pre = apply_delta1_inverse(alg.base(), coeffs, u);
  TensorState out;
  for (const auto& [m, c] : pre.terms()) {
    if (!is_odd(m.parity) || k % 2 == 0) {
      out += twist.one_tensor_orbit(State::of(m)) * c;
    } else {
      // odd parity with odd k: the class vanishes; keep the literal plain
      // orbit, whose coset is zero
      for (int a = 1; a <= k; ++a) out.add(alg.one_tensor(m, a), c);
    }
  }
  return out * CycloScalar(Rational(1, k));
}

OspanBuilder direct_ospan_builder(int threads) {
  return [threads](const Twist& twist, Weight wgen, Weight wstore) {
    return build_ospan(twist, wgen, wstore, threads);
  };
}

IsoSession::IsoSession(const VosaSpec& base, int k, Weight cutoff, Weight gen_cutoff,
                       const OspanBuilder& builder)
    : base_(&base),
      k_(k),
      n_(cutoff),
      wgen_(gen_cutoff),
      wstore_(Weight::from_halves(gen_cutoff.twice() + 2)),
      coeffs_(solve_a_coeffs(k, std::max(4, gen_cutoff.twice() + 4))),
      src_alg_(base, k),
      src_twist_(src_alg_, TwistSpec{{k}, false}),
      tgt_alg_(base, 1),
      tgt_twist_(tgt_alg_, TwistSpec{{1}, k % 2 == 0}),
      src_ospan_(builder(src_twist_, wgen_, wstore_)),
      tgt_ospan_(builder(tgt_twist_, wgen_, wstore_)) {
  if (n_ > wgen_) throw std::invalid_argument("IsoSession: cutoff exceeds gen cutoff");
}

const FiniteAlgebra& IsoSession::source_quotient() {
  if (!src_quot_) src_quot_.emplace(quotient_algebra(src_twist_, src_ospan_, n_));
  return *src_quot_;
}

const FiniteAlgebra& IsoSession::target_quotient() {
  if (!tgt_quot_) tgt_quot_.emplace(quotient_algebra(tgt_twist_, tgt_ospan_, n_));
  return *tgt_quot_;
}

State IsoSession::phi_of_orbit_combination(const TensorState& one_tensor_part) {
  State img;
  for (const Orbit1Term& t : decompose_one_tensor_orbits(src_twist_, one_tensor_part)) {
    img += apply_delta1(*base_, coeffs_, State::of(t.u)) *
           (t.coeff * CycloScalar(static_cast<long>(k_)));
  }
  return img;
}

State IsoSession::phi_of_product_class(const TensorState& prod) {
  auto [one, two] = split_by_tensor_rank(prod);
  TensorState e = one;
  for (const Orbit2Term& t : decompose_two_tensor_orbits(src_twist_, two)) {
    TwoTensorReduction red = reduce_two_tensor(src_twist_, t.p, t.q, t.offset);
    e += red.one_tensor_equiv * t.coeff;
  }
  return phi_of_orbit_combination(e);
}

CheckReport IsoSession::verify_well_defined(Weight pair_bound) {
  CheckReport report;
  std::vector<GeneratorClass> classes = generator_classes(src_twist_, pair_bound);
  for (const GeneratorClass& x : classes) {
    for (const GeneratorClass& y : classes) {
      if (x.u.weight2 + y.u.weight2 > pair_bound.twice()) continue;
      ++report.pairs_checked;
      ++report.parity_cases[static_cast<size_t>(parity_case_index(x.parity, y.parity))];
      TensorState prod = circle_g(src_twist_, x.vec, y.vec);
      State img = phi_of_product_class(prod);
      if (!tgt_ospan_.contains(tgt_alg_.from_base(img))) {
        report.pass = false;
        report.counterexample = "phi(class(" + label(x.u) + ") o_g class(" + label(y.u) +
                                ")) escapes the target O-span";
        return report;
      }
    }
  }
  return report;
}

CheckReport IsoSession::verify_homomorphism(Weight pair_bound) {
  CheckReport report;
  std::vector<GeneratorClass> classes = generator_classes(src_twist_, pair_bound);
  for (const GeneratorClass& x : classes) {
    for (const GeneratorClass& y : classes) {
      if (x.u.weight2 + y.u.weight2 > pair_bound.twice()) continue;
      ++report.pairs_checked;
      ++report.parity_cases[static_cast<size_t>(parity_case_index(x.parity, y.parity))];
      TensorState prod = star_g(src_twist_, x.vec, y.vec);
      State lhs = phi_of_product_class(prod);
      State px = phi_on_generator(*base_, x, coeffs_);
      State py = phi_on_generator(*base_, y, coeffs_);
      TensorState rhs = star_g(tgt_twist_, tgt_alg_.from_base(px), tgt_alg_.from_base(py));
      if (!(tgt_ospan_.reduce(tgt_alg_.from_base(lhs)) == tgt_ospan_.reduce(rhs))) {
        report.pass = false;
        report.counterexample = "phi(class(" + label(x.u) + ") *_g class(" + label(y.u) +
                                ")) != phi(x) * phi(y) after reduction";
        return report;
      }
    }
  }
  return report;
}

IsoReport IsoSession::build_iso_matrix() {
  CheckReport wd = verify_well_defined(wgen_);
  CheckReport hom = verify_homomorphism(n_);
  return build_iso_matrix(wd, hom);
}

IsoReport IsoSession::build_iso_matrix(const CheckReport& wd, const CheckReport& hom) {
  IsoReport rep;
  rep.k = k_;
  rep.cutoff = n_;
  rep.gen_cutoff = wgen_;

  const FiniteAlgebra& src = source_quotient();
  const FiniteAlgebra& tgt = target_quotient();
  rep.dim_source = src.dim();
  rep.dim_target = tgt.dim();

  rep.well_defined = wd.pass;
  rep.homomorphism = hom.pass;
  if (!wd.pass) rep.counterexample = wd.counterexample;
  if (!hom.pass && rep.counterexample.empty()) rep.counterexample = hom.counterexample;

  // phi on the source coset basis, through generator-class decomposition of
  // each 0*-projected basis label.
  std::vector<GeneratorClass> classes = generator_classes(src_twist_, n_);
  RrefSolver class_images;
  std::vector<size_t> accepted;
  for (size_t i = 0; i < classes.size(); ++i) {
    SparseVec red = src_ospan_.reduce_sparse(src_ospan_.to_sparse(classes[i].vec));
    if (class_images.insert(std::move(red))) accepted.push_back(i);
  }

  rep.phi.assign(rep.dim_target, std::vector<CycloScalar>(rep.dim_source, CycloScalar::zero()));
  for (size_t i = 0; i < src.dim(); ++i) {
    TensorState projected = src_twist_.project(0, TensorState::of(src.basis()[i]));
    auto combo = class_images.solve(src_ospan_.reduce_sparse(src_ospan_.to_sparse(projected)));
    if (!combo) {
      rep.counterexample = "[" + label(src.basis()[i]) + "] is not a generator-class combination";
      rep.invertible = false;
      return rep;
    }
    State img;
    for (size_t t = 0; t < accepted.size(); ++t) {
      if ((*combo)[t].is_zero()) continue;
      img += phi_on_generator(*base_, classes[accepted[t]], coeffs_) * (*combo)[t];
    }
    std::vector<CycloScalar> col = tgt.express(tgt_alg_.from_base(img));
    for (size_t r = 0; r < rep.dim_target; ++r) rep.phi[r][i] = col[r];
  }

  rep.invertible = rep.dim_source == rep.dim_target && mat_rank(rep.phi) == rep.dim_source;

  // psi columns over target labels
  rep.psi.assign(rep.dim_source, std::vector<CycloScalar>(rep.dim_target, CycloScalar::zero()));
  bool psi_ok = true;
  for (size_t j = 0; j < tgt.dim(); ++j) {
    State b = State::of(tgt.basis()[j].factors[0]);
    TensorState image = psi_on_state(src_twist_, coeffs_, b);
    try {
      std::vector<CycloScalar> col = src.express(image);
      for (size_t r = 0; r < rep.dim_source; ++r) rep.psi[r][j] = col[r];
    } catch (const CutoffError&) {
      psi_ok = false;
      if (rep.counterexample.empty())
        rep.counterexample = "psi([" + label(tgt.basis()[j]) + "]) not expressible at cutoff";
    }
  }
  rep.inverse_roundtrip = psi_ok && rep.invertible && mat_is_identity(mat_mul(rep.phi, rep.psi)) &&
                          mat_is_identity(mat_mul(rep.psi, rep.phi));
  return rep;
}

CorollaryReport general_cycle_type(const VosaSpec& base, const std::vector<int>& cycles,
                                   Weight cutoff, Weight gen_cutoff, const OspanBuilder& builder) {
  CorollaryReport rep;
  rep.cycles = cycles;
  rep.cutoff = cutoff;

  int k = 0;
  for (int c : cycles) k += c;
  TensorAlgebra alg(base, k);
  Twist twist(alg, TwistSpec{cycles, false});
  Weight wstore = Weight::from_halves(gen_cutoff.twice() + 2);
  OSpan span = builder(twist, gen_cutoff, wstore);
  rep.dim = quotient_algebra(twist, span, cutoff).dim();

  TensorAlgebra base1(base, 1);
  std::optional<size_t> dim_plain, dim_sigma;
  rep.expected = 1;
  for (int c : cycles) {
    const bool even = c % 2 == 0;
    std::optional<size_t>& slot = even ? dim_sigma : dim_plain;
    if (!slot) {
      Twist t1(base1, TwistSpec{{1}, even});
      OSpan s1 = builder(t1, gen_cutoff, wstore);
      slot = quotient_algebra(t1, s1, cutoff).dim();
    }
    rep.per_cycle_dims.emplace_back(c, *slot);
    rep.expected *= *slot;
  }
  rep.pass = rep.dim == rep.expected;
  return rep;
}

}  // namespace permzhu
