#include "permzhu/tensor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permzhu {

std::string label(const TensorMonomial& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.factors.size(); ++i) {
    if (i) os << "|";
    os << label(m.factors[i]);
  }
  return os.str();
}

TensorAlgebra::TensorAlgebra(const VosaSpec& base, int k) : base_(&base), k_(k) {
  if (k < 1) throw std::invalid_argument("TensorAlgebra: k must be >= 1");
}

TensorMonomial TensorAlgebra::make(std::vector<Monomial> factors) const {
  if (static_cast<int>(factors.size()) != k_)
    throw std::invalid_argument("TensorAlgebra::make: wrong number of factors");
  TensorMonomial m;
  m.weight2 = 0;
  Parity p = Parity::even;
  for (const auto& f : factors) {
    m.weight2 += f.weight2;
    p = p + f.parity;
  }
  m.parity = p;
  m.factors = std::move(factors);
  return m;
}

TensorMonomial TensorAlgebra::vacuum() const {
  return make(std::vector<Monomial>(static_cast<size_t>(k_)));
}

TensorState TensorAlgebra::omega() const {
  TensorState w;
  for (int slot = 1; slot <= k_; ++slot) w += embed_at_slot(base_->conformal_vector(), slot);
  return w;
}

TensorMonomial TensorAlgebra::one_tensor(const Monomial& u, int slot) const {
  if (slot < 1 || slot > k_) throw std::invalid_argument("one_tensor: slot out of range");
  std::vector<Monomial> f(static_cast<size_t>(k_));
  f[static_cast<size_t>(slot - 1)] = u;
  return make(std::move(f));
}

TensorMonomial TensorAlgebra::two_tensor(const Monomial& u, int a, const Monomial& v, int b) const {
  if (a == b) throw std::invalid_argument("two_tensor: slots must differ");
  if (a < 1 || a > k_ || b < 1 || b > k_) throw std::invalid_argument("two_tensor: slot out of range");
  std::vector<Monomial> f(static_cast<size_t>(k_));
  f[static_cast<size_t>(a - 1)] = u;
  f[static_cast<size_t>(b - 1)] = v;
  return make(std::move(f));
}

TensorState TensorAlgebra::embed_at_slot(const State& s, int slot) const {
  TensorState out;
  for (const auto& [m, c] : s.terms()) out.add(one_tensor(m, slot), c);
  return out;
}

std::vector<TensorMonomial> TensorAlgebra::basis_upto(Weight w) const {
  std::vector<TensorMonomial> out;
  if (w.twice() < 0) return out;
  std::vector<Monomial> base_basis = base_->basis_upto(w);
  std::vector<Monomial> chosen(static_cast<size_t>(k_));
  auto rec = [&](auto&& self, int slot, int budget2) -> void {
    if (slot == k_) {
      out.push_back(make(chosen));
      return;
    }
    for (const Monomial& b : base_basis) {
      if (b.weight2 > budget2) break;  // base_basis is weight-sorted
      chosen[static_cast<size_t>(slot)] = b;
      self(self, slot + 1, budget2 - b.weight2);
    }
  };
  rec(rec, 0, w.twice());
  std::sort(out.begin(), out.end());
  return out;
}

TensorState TensorAlgebra::mono_product(const TensorMonomial& u, std::int32_t n,
                                        const TensorMonomial& v) const {
  // Koszul sign of pulling each u_i past v_1 ... v_{i-1}
  int sign = 1;
  {
    int vprefix = 0;  // parity of v_1 + ... + v_{i-1} mod 2
    for (int i = 0; i < k_; ++i) {
      if (i > 0 && is_odd(u.factors[static_cast<size_t>(i)].parity) && (vprefix % 2 != 0))
        sign = -sign;
      vprefix += is_odd(v.factors[static_cast<size_t>(i)].parity) ? 1 : 0;
    }
  }

  // mode budget per slot: (u_i)_{n_i} v_i = 0 unless its weight stays >= 0
  std::vector<long> cap(static_cast<size_t>(k_));
  for (int i = 0; i < k_; ++i) {
    cap[static_cast<size_t>(i)] =
        (u.factors[static_cast<size_t>(i)].weight2 + v.factors[static_cast<size_t>(i)].weight2) / 2 - 1;
  }
  std::vector<long> suffix_cap(static_cast<size_t>(k_) + 1, 0);
  for (int i = k_ - 1; i >= 0; --i)
    suffix_cap[static_cast<size_t>(i)] = suffix_cap[static_cast<size_t>(i) + 1] + cap[static_cast<size_t>(i)];

  TensorState out;
  std::vector<Monomial> fac(static_cast<size_t>(k_));
  const long total = static_cast<long>(n) - k_ + 1;

  auto rec = [&](auto&& self, int slot, long rem, const CycloScalar& coeff) -> void {
    if (slot == k_ - 1) {
      if (rem > cap[static_cast<size_t>(slot)]) return;
      State f = base_->nth_product(u.factors[static_cast<size_t>(slot)],
                                   static_cast<std::int32_t>(rem),
                                   v.factors[static_cast<size_t>(slot)]);
      for (const auto& [m, c] : f.terms()) {
        fac[static_cast<size_t>(slot)] = m;
        out.add(make(fac), coeff * c);
      }
      return;
    }
    long lo = rem - suffix_cap[static_cast<size_t>(slot) + 1];
    long hi = cap[static_cast<size_t>(slot)];
    for (long ni = lo; ni <= hi; ++ni) {
      State f = base_->nth_product(u.factors[static_cast<size_t>(slot)],
                                   static_cast<std::int32_t>(ni),
                                   v.factors[static_cast<size_t>(slot)]);
      if (f.is_zero()) continue;
      for (const auto& [m, c] : f.terms()) {
        fac[static_cast<size_t>(slot)] = m;
        self(self, slot + 1, rem - ni, coeff * c);
      }
    }
  };
  rec(rec, 0, total, CycloScalar(static_cast<long>(sign)));
  return out;
}

TensorState TensorAlgebra::nth_product(const TensorState& u, std::int32_t n,
                                       const TensorState& v) const {
  TensorState out;
  for (const auto& [mu, cu] : u.terms()) {
    if (static_cast<int>(mu.factors.size()) != k_)
      throw std::invalid_argument("tensor nth_product: mismatched k");
    for (const auto& [mv, cv] : v.terms()) {
      if (static_cast<int>(mv.factors.size()) != k_)
        throw std::invalid_argument("tensor nth_product: mismatched k");
      TensorState piece = mono_product(mu, n, mv);
      if (!piece.is_zero()) out += piece * (cu * cv);
    }
  }
  return out;
}

TensorState TensorAlgebra::from_base(const State& s) const {
  if (k_ != 1) throw std::invalid_argument("from_base: k must be 1");
  return embed_at_slot(s, 1);
}

State TensorAlgebra::to_base(const TensorState& s) const {
  if (k_ != 1) throw std::invalid_argument("to_base: k must be 1");
  State out;
  for (const auto& [m, c] : s.terms()) out.add(m.factors[0], c);
  return out;
}

}  // namespace permzhu
