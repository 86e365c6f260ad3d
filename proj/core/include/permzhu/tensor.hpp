#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permzhu/combo.hpp"
#include "permzhu/vosa.hpp"

namespace permzhu {

// Basis monomial of V^{otimes k}: a fixed-slot tuple of base monomials.
// Slots are never reordered; all Koszul signs live in the operations that
// move factors around.
struct TensorMonomial {
  std::vector<Monomial> factors;
  std::int32_t weight2 = 0;
  Parity parity = Parity::even;

  Weight weight() const { return Weight::from_halves(weight2); }
  size_t nontrivial_slots() const {
    size_t n = 0;
    for (const auto& f : factors)
      if (!f.is_vacuum()) ++n;
    return n;
  }

  friend bool operator==(const TensorMonomial& a, const TensorMonomial& b) {
    return a.factors == b.factors;
  }
  friend bool operator<(const TensorMonomial& a, const TensorMonomial& b) {
    if (a.weight2 != b.weight2) return a.weight2 < b.weight2;
    return a.factors < b.factors;
  }
};

std::string label(const TensorMonomial& m);

using TensorState = LinearCombo<TensorMonomial>;

// V^{otimes k} as a graded super vector space with the tensor-product vertex
// operator structure: Y(u1 x...x uk, z) acts factor-wise with the sign
// (-1)^{sum_{i>=2} |u_i| (|v_1|+...+|v_{i-1}|)}.
class TensorAlgebra {
 public:
  TensorAlgebra(const VosaSpec& base, int k);

  const VosaSpec& base() const { return *base_; }
  int k() const { return k_; }

  TensorMonomial make(std::vector<Monomial> factors) const;
  TensorMonomial vacuum() const;
  TensorState vacuum_state() const { return TensorState::of(vacuum()); }

  // sum over slots of the base conformal vector
  TensorState omega() const;

  // u placed in the given 1-based slot, vacuum elsewhere (the paper's u^a)
  TensorMonomial one_tensor(const Monomial& u, int slot) const;
  // u in slot a, v in slot b (distinct, 1-based)
  TensorMonomial two_tensor(const Monomial& u, int a, const Monomial& v, int b) const;

  // linear embedding of a base state into one slot
  TensorState embed_at_slot(const State& s, int slot) const;

  std::vector<TensorMonomial> basis_upto(Weight w) const;

  TensorState nth_product(const TensorState& u, std::int32_t n, const TensorState& v) const;

  // k == 1 conversions
  TensorState from_base(const State& s) const;
  State to_base(const TensorState& s) const;

 private:
  TensorState mono_product(const TensorMonomial& u, std::int32_t n, const TensorMonomial& v) const;

  const VosaSpec* base_;
  int k_;
};

}  // namespace permzhu
