#include "permzhu/twist.hpp"

#include <sstream>
#include <stdexcept>

namespace permzhu {

std::string TwistSpec::describe() const {
  std::ostringstream os;
  os << "cycles(";
  for (size_t i = 0; i < cycles.size(); ++i) {
    if (i) os << ",";
    os << cycles[i];
  }
  os << ")";
  if (with_sigma) os << "*sigma";
  return os.str();
}

Twist::Twist(const TensorAlgebra& alg, TwistSpec spec) : alg_(&alg), spec_(std::move(spec)) {
  if (spec_.k() != alg.k()) throw std::invalid_argument("Twist: cycle type does not sum to k");
  for (int c : spec_.cycles)
    if (c < 1) throw std::invalid_argument("Twist: cycle lengths must be >= 1");

  // Block rotate-left per cycle: v_1 x ... x v_c -> v_2 x ... x v_c x v_1,
  // i.e. content of the block's first slot moves to its last slot.
  perm_.resize(static_cast<size_t>(alg.k()));
  int offset = 0;
  for (int c : spec_.cycles) {
    for (int j = 0; j < c; ++j) {
      perm_[static_cast<size_t>(offset + j)] = (j == 0) ? offset + c - 1 : offset + j - 1;
    }
    offset += c;
  }

  long lcm = 1;
  for (int c : spec_.cycles) lcm = std::lcm(lcm, static_cast<long>(c));

  // order of perm * sigma^c: lcm if c*lcm is even, else 2*lcm
  auto order_with_sigma_power = [&](int c) -> int {
    if (c % 2 == 0 || lcm % 2 == 0) return static_cast<int>(lcm);
    return static_cast<int>(2 * lcm);
  };
  t0_ = order_with_sigma_power(spec_.with_sigma ? 1 : 0);
  t_ = order_with_sigma_power(spec_.with_sigma ? 2 : 1);
  root_ = CycloScalar::root_of_unity(static_cast<unsigned>(t_), 1);
}

TensorState Twist::apply_perm_signed(const TensorState& s) const {
  const int k = alg_->k();
  TensorState out;
  for (const auto& [m, c] : s.terms()) {
    // Koszul sign: one factor -1 per inverted pair of odd factors.
    int sign = 1;
    for (int a = 0; a < k; ++a) {
      if (!is_odd(m.factors[static_cast<size_t>(a)].parity)) continue;
      for (int b = a + 1; b < k; ++b) {
        if (!is_odd(m.factors[static_cast<size_t>(b)].parity)) continue;
        if (perm_[static_cast<size_t>(a)] > perm_[static_cast<size_t>(b)]) sign = -sign;
      }
    }
    std::vector<Monomial> nf(static_cast<size_t>(k));
    for (int a = 0; a < k; ++a) nf[static_cast<size_t>(perm_[static_cast<size_t>(a)])] = m.factors[static_cast<size_t>(a)];
    out.add(alg_->make(std::move(nf)), c * CycloScalar(static_cast<long>(sign)));
  }
  return out;
}

TensorState Twist::apply_sigma(const TensorState& s) const {
  TensorState out;
  for (const auto& [m, c] : s.terms()) {
    out.add(m, is_odd(m.parity) ? -c : c);
  }
  return out;
}

TensorState Twist::apply_g(const TensorState& s) const {
  TensorState r = apply_perm_signed(s);
  return spec_.with_sigma ? apply_sigma(r) : r;
}

TensorState Twist::apply_h(const TensorState& s) const {
  return apply_sigma(apply_g(s));
}

TensorState Twist::apply_h_power(long a, const TensorState& s) const {
  long t = static_cast<long>(t_);
  long r = ((a % t) + t) % t;
  TensorState cur = s;
  for (long i = 0; i < r; ++i) cur = apply_h(cur);
  return cur;
}

TensorState Twist::project(int r, const TensorState& s) const {
  if (r < 0 || r >= t_) throw std::invalid_argument("Twist::project: eigenvalue index out of range");
  TensorState acc;
  TensorState cur = s;
  for (int a = 0; a < t_; ++a) {
    acc += cur * root_.pow(-static_cast<long>(r) * a);
    if (a + 1 < t_) cur = apply_h(cur);
  }
  return acc * CycloScalar(Rational(1, t_)).promoted(1);
}

TensorState Twist::full_orbit_sum(const TensorMonomial& m) const {
  TensorState acc;
  TensorState cur = TensorState::of(m);
  for (int a = 0; a < t_; ++a) {
    acc += cur;
    if (a + 1 < t_) cur = apply_h(cur);
  }
  return acc;
}

TensorState Twist::one_tensor_orbit(const State& u) const {
  const int k = alg_->k();
  TensorState out;
  for (const auto& [m, c] : u.terms()) {
    if (is_odd(m.parity)) {
      if (k % 2 != 0)
        throw std::invalid_argument(
            "one_tensor_orbit: odd-parity orbit classes vanish for odd cycle length " +
            std::to_string(k) + "; no spanning vector exists");
      for (int a = 1; a <= k; ++a) {
        CycloScalar s = (a % 2 == 1) ? c : -c;
        out.add(alg_->one_tensor(m, a), s);
      }
    } else {
      for (int a = 1; a <= k; ++a) out.add(alg_->one_tensor(m, a), c);
    }
  }
  return out;
}

}  // namespace permzhu
