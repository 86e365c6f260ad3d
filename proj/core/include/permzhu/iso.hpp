#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permzhu/delta.hpp"
#include "permzhu/zhu.hpp"

namespace permzhu {

// Spanning-class generator [sum_a u^a] (u even) or [sum_a (-1)^{a-1} u^a]
// (u odd, even cycle length only).
struct GeneratorClass {
  Monomial u;
  Parity parity = Parity::even;
  TensorState vec;
};

std::vector<GeneratorClass> generator_classes(const Twist& twist, Weight bound);

// The n=2 spanning reduction: the orbit sum of x_{u,v}^{1,1+j} is congruent
// mod O_g to a combination of 1-tensor orbit vectors.  The equivalent is
// derived mechanically by expressing the orbit over the eigencomponent
// relation vectors (P_r u^1) o_g (P_{T-r} v^1), which lie in O_g by
// construction; no transcribed sign tables are involved.
struct TwoTensorReduction {
  TensorState orbit2;            // full h-orbit sum of x_{u,v}^{1,1+j}
  TensorState one_tensor_equiv;  // congruent 1-tensor state
};

TwoTensorReduction reduce_two_tensor(const Twist& twist, const Monomial& u, const Monomial& v,
                                     int offset_j);

// 1-tensor kernels Res_z Y(u,z)v (1+z)^{wt u - 1 + s/k} z^{-1} entering the
// closed-form identities (s = 1..k-1).
State remark_residue_kernel(const VosaSpec& base, const Monomial& u, const Monomial& v, int s,
                            int k);

// phi on a generator class: [class(u)] -> [k Delta_k(1) u].
State phi_on_generator(const VosaSpec& base, const GeneratorClass& c, const ACoeffs& coeffs);

// psi(u) = (1/k) sum_a (Delta_k(1)^{-1} u)^a with the parity-matched orbit
// signs; the two maps are mutually inverse on coset bases.
TensorState psi_on_state(const Twist& twist, const ACoeffs& coeffs, const State& u);

struct CheckReport {
  bool pass = true;
  long pairs_checked = 0;
  std::string counterexample;                    // empty when pass
  std::array<long, 4> parity_cases{0, 0, 0, 0};  // ee, eo, oe, oo pair counts
};

struct IsoReport {
  int k = 1;
  Weight cutoff;
  Weight gen_cutoff;
  size_t dim_source = 0;
  size_t dim_target = 0;
  Matrix phi;  // dim_target x dim_source, over the coset bases
  Matrix psi;  // dim_source x dim_target
  bool well_defined = false;
  bool homomorphism = false;
  bool invertible = false;
  bool inverse_roundtrip = false;
  std::string counterexample;

  bool pass() const { return well_defined && homomorphism && invertible && inverse_roundtrip; }
};

using OspanBuilder = std::function<OSpan(const Twist&, Weight, Weight)>;

OspanBuilder direct_ospan_builder(int threads = 0);

// One k-cycle verification run: source A_g(F^{tensor k}) against the target
// A(F) for odd k / A_sigma(F) for even k, all at matching cutoffs.
class IsoSession {
 public:
  IsoSession(const VosaSpec& base, int k, Weight cutoff, Weight gen_cutoff,
             const OspanBuilder& builder);
  IsoSession(const IsoSession&) = delete;
  IsoSession& operator=(const IsoSession&) = delete;

  int k() const { return k_; }
  Weight cutoff() const { return n_; }
  Weight gen_cutoff() const { return wgen_; }
  const ACoeffs& coeffs() const { return coeffs_; }

  const TensorAlgebra& source_algebra() const { return src_alg_; }
  const Twist& source_twist() const { return src_twist_; }
  const OSpan& source_ospan() const { return src_ospan_; }
  const TensorAlgebra& target_algebra() const { return tgt_alg_; }
  const Twist& target_twist() const { return tgt_twist_; }
  const OSpan& target_ospan() const { return tgt_ospan_; }

  const FiniteAlgebra& source_quotient();
  const FiniteAlgebra& target_quotient();

  // phi of an explicit combination of 1-tensor orbit classes, as a state of
  // the base algebra.  The input must decompose exactly over orbit vectors.
  State phi_of_orbit_combination(const TensorState& one_tensor_part);

  // For ordered generator-class pairs with weight sum <= pair_bound:
  // phi(x o_g y) lands in the target O-span.
  CheckReport verify_well_defined(Weight pair_bound);
  // phi(x *_g y) = phi(x) *_target phi(y) on canonical representatives.
  CheckReport verify_homomorphism(Weight pair_bound);

  IsoReport build_iso_matrix();
  // Variant reusing already-computed well-definedness/homomorphism sweeps.
  IsoReport build_iso_matrix(const CheckReport& wd, const CheckReport& hom);

 private:
  // expand a product of orbit classes into phi-ready 1-tensor form
  State phi_of_product_class(const TensorState& prod);

  const VosaSpec* base_;
  int k_;
  Weight n_, wgen_, wstore_;
  ACoeffs coeffs_;
  TensorAlgebra src_alg_;
  Twist src_twist_;
  TensorAlgebra tgt_alg_;
  Twist tgt_twist_;
  OSpan src_ospan_;
  OSpan tgt_ospan_;
  std::optional<FiniteAlgebra> src_quot_;
  std::optional<FiniteAlgebra> tgt_quot_;
};

struct CorollaryReport {
  std::vector<int> cycles;
  Weight cutoff;
  size_t dim = 0;
  std::vector<std::pair<int, size_t>> per_cycle_dims;  // (cycle length, target dim)
  size_t expected = 0;
  bool pass = false;
};

// dim A_g^{(N)} for a disjoint-cycle permutation equals the product of the
// per-cycle target dimensions at matched cutoffs.
CorollaryReport general_cycle_type(const VosaSpec& base, const std::vector<int>& cycles,
                                   Weight cutoff, Weight gen_cutoff, const OspanBuilder& builder);

}  // namespace permzhu
