#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "permzhu/combo.hpp"
#include "permzhu/cyclotomic.hpp"
#include "permzhu/weight.hpp"

namespace permzhu {

struct GeneratorInfo {
  std::string name;
  Weight weight;
  Parity parity;
};

// One creation operator a_{(mode)} of a listed generator.
struct ModeApp {
  std::uint8_t generator = 0;
  std::int32_t mode = -1;
  auto operator<=>(const ModeApp&) const = default;
};

// PBW-style basis monomial a1_{(m1)} a2_{(m2)} ... |vac>, outermost first.
// Weight and parity are cached so ordering does not need the algebra.
// Ordering is weight-first, then lexicographic on the mode word; this fixed
// total order drives every deterministic enumeration and pivot choice.
struct Monomial {
  std::vector<ModeApp> word;
  std::int32_t weight2 = 0;  // twice the conformal weight
  Parity parity = Parity::even;

  Weight weight() const { return Weight::from_halves(weight2); }
  bool is_vacuum() const { return word.empty(); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.word == b.word; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.weight2 != b.weight2) return a.weight2 < b.weight2;
    return a.word < b.word;
  }
};

std::string label(const Monomial& m);

using State = LinearCombo<Monomial>;

// The algebra interface: generator data, vacuum/conformal structure, graded
// basis enumeration, and the action of generator modes.  nth_product and
// virasoro are derived generically from these through the standard iterate
// formula, so plugging in a second algebra only means supplying generators,
// their mode action and a basis.
class VosaSpec {
 public:
  virtual ~VosaSpec() = default;

  virtual const std::vector<GeneratorInfo>& generators() const = 0;
  virtual Rational central_charge() const = 0;
  virtual State conformal_vector() const = 0;

  // All basis monomials of weight <= w, in canonical order.
  virtual std::vector<Monomial> basis_upto(Weight w) const = 0;

  // Linear action of the generator's n-th mode on a state.
  virtual State generator_mode(std::uint8_t gen, std::int32_t n, const State& s) const = 0;

  Monomial vacuum() const { return Monomial{}; }
  State vacuum_state() const { return State::of(vacuum()); }

  // u_{(n)} v by recursion on the PBW word of u, memoized per algebra.
  State nth_product(const State& u, std::int32_t n, const State& v) const;
  State nth_product(const Monomial& u, std::int32_t n, const Monomial& v) const;

  // L(m) s = omega_{(m+1)} s.
  State virasoro(std::int32_t m, const State& s) const;

 private:
  struct MemoKey {
    Monomial u;
    std::int32_t n;
    Monomial v;
    friend bool operator<(const MemoKey& a, const MemoKey& b) {
      if (a.n != b.n) return a.n < b.n;
      if (a.u < b.u) return true;
      if (b.u < a.u) return false;
      return a.v < b.v;
    }
  };
  mutable std::mutex memo_mutex_;
  mutable std::map<MemoKey, State> memo_;
};

}  // namespace permzhu
