#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "permzhu/tensor.hpp"

namespace permzhu {

// Which automorphism of V^{otimes k} we twist by: a product of disjoint
// cycles acting on consecutive slot blocks, optionally composed with the
// parity automorphism sigma.  The single k-cycle is cycles = {k}; the
// untwisted and sigma-twisted base algebra are {1}/false and {1}/true.
struct TwistSpec {
  std::vector<int> cycles;
  bool with_sigma = false;

  int k() const { return std::accumulate(cycles.begin(), cycles.end(), 0); }
  std::string describe() const;
};

// g, sigma, h = g sigma and the h-eigenprojectors on a fixed tensor algebra.
// All operators are exact; T0 = o(g), T = o(h), and the eigenvalue root is
// zeta_T.  For the k-cycle this gives T = 2k, root = xi = e^{pi i/k} for odd
// k and T = k, root = eta = e^{2 pi i/k} for even k.
class Twist {
 public:
  Twist(const TensorAlgebra& alg, TwistSpec spec);

  const TensorAlgebra& algebra() const { return *alg_; }
  const TwistSpec& spec() const { return spec_; }
  int T0() const { return t0_; }
  int T() const { return t_; }
  const CycloScalar& root() const { return root_; }

  TensorState apply_g(const TensorState& s) const;
  TensorState apply_sigma(const TensorState& s) const;
  TensorState apply_h(const TensorState& s) const;
  TensorState apply_h_power(long a, const TensorState& s) const;

  // P_r = (1/T) sum_a root^{-ra} h^a; image has h-eigenvalue root^r.
  TensorState project(int r, const TensorState& s) const;

  // sum over the full h-orbit (= T * P_0)
  TensorState full_orbit_sum(const TensorMonomial& m) const;

  // Lemma-style spanning vectors: sum_a u^a for even u, alternating
  // sum_a (-1)^{a-1} u^a for odd u with k even.  Odd u with odd k is
  // rejected: those orbit classes vanish identically.
  TensorState one_tensor_orbit(const State& u) const;

 private:
  TensorState apply_perm_signed(const TensorState& s) const;

  const TensorAlgebra* alg_;
  TwistSpec spec_;
  std::vector<int> perm_;  // 0-based: content of slot i moves to slot perm_[i]
  int t0_ = 1;
  int t_ = 1;
  CycloScalar root_;
};

}  // namespace permzhu
