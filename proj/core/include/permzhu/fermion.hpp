#pragma once

#include <string>
#include <vector>

#include "permzhu/vosa.hpp"

namespace permzhu {

// The single free fermion F (central charge 1/2): one odd generator psi of
// weight 1/2 with Y(psi,z) = sum_n psi_n z^{-n-1} and {psi_m, psi_n} =
// delta_{m+n,-1}.  Basis monomials are psi_{-m_1}...psi_{-m_r}|0> with
// m_1 > ... > m_r >= 1.  The conformal vector is (1/2) psi_{-2} psi_{-1} |0>.
class FreeFermion final : public VosaSpec {
 public:
  FreeFermion();

  static const FreeFermion& instance();

  const std::vector<GeneratorInfo>& generators() const override { return gens_; }
  Rational central_charge() const override { return Rational(1, 2); }
  State conformal_vector() const override;
  std::vector<Monomial> basis_upto(Weight w) const override;
  State generator_mode(std::uint8_t gen, std::int32_t n, const State& s) const override;

 private:
  std::vector<GeneratorInfo> gens_;
};

// Monomial psi_{-m_1}...psi_{-m_r}|0> from strictly decreasing positive modes.
Monomial fermion_monomial(const std::vector<int>& modes);

// Compact label "[m1,m2,...]"; "[]" is the vacuum.
std::string fermion_label(const Monomial& m);

inline Monomial fermion_vacuum() { return fermion_monomial({}); }
inline Monomial fermion_psi() { return fermion_monomial({1}); }

}  // namespace permzhu
