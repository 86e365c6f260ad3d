#include "permzhu/fermion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace permzhu {

FreeFermion::FreeFermion() {
  gens_.push_back(GeneratorInfo{"psi", Weight::from_halves(1), Parity::odd});
}

const FreeFermion& FreeFermion::instance() {
  static const FreeFermion algebra;
  return algebra;
}

State FreeFermion::conformal_vector() const {
  return State::of(fermion_monomial({2, 1}), CycloScalar(Rational(1, 2)));
}

Monomial fermion_monomial(const std::vector<int>& modes) {
  Monomial m;
  int w2 = 0;
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 1) throw std::invalid_argument("fermion_monomial: modes must be >= 1");
    if (i > 0 && modes[i] >= modes[i - 1])
      throw std::invalid_argument("fermion_monomial: modes must strictly decrease");
    m.word.push_back(ModeApp{0, -modes[i]});
    w2 += 2 * modes[i] - 1;
  }
  m.weight2 = w2;
  m.parity = (modes.size() % 2 == 0) ? Parity::even : Parity::odd;
  return m;
}

std::string fermion_label(const Monomial& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.word.size(); ++i) {
    if (i) os << ",";
    os << -m.word[i].mode;
  }
  os << "]";
  return os.str();
}

std::vector<Monomial> FreeFermion::basis_upto(Weight w) const {
  std::vector<Monomial> out;
  if (w.twice() < 0) return out;
  std::vector<int> modes;
  // Partitions into distinct parts m_1 > ... > m_r >= 1, weight sum(2m_i - 1).
  auto rec = [&](auto&& self, int max_mode, int remaining2) -> void {
    out.push_back(fermion_monomial(modes));
    for (int m = std::min(max_mode, (remaining2 + 1) / 2); m >= 1; --m) {
      if (2 * m - 1 > remaining2) continue;
      modes.push_back(m);
      self(self, m - 1, remaining2 - (2 * m - 1));
      modes.pop_back();
    }
  };
  rec(rec, w.twice(), w.twice());
  std::sort(out.begin(), out.end());
  return out;
}

State FreeFermion::generator_mode(std::uint8_t gen, std::int32_t n, const State& s) const {
  if (gen != 0) throw std::invalid_argument("FreeFermion has a single generator");
  State result;
  for (const auto& [m, c] : s.terms()) {
    if (n < 0) {
      // Creation psi_{-k}: anticommute into position; psi_{-k}^2 = 0.
      const int k = -n;
      std::vector<int> modes(m.word.size());
      for (size_t i = 0; i < m.word.size(); ++i) modes[i] = -m.word[i].mode;
      size_t pos = 0;
      bool dup = false;
      while (pos < modes.size() && modes[pos] > k) ++pos;
      if (pos < modes.size() && modes[pos] == k) dup = true;
      if (dup) continue;
      modes.insert(modes.begin() + static_cast<std::ptrdiff_t>(pos), k);
      int sign = (pos % 2 == 0) ? 1 : -1;
      result.add(fermion_monomial(modes), c * CycloScalar(static_cast<long>(sign)));
    } else {
      // Annihilation psi_n: {psi_n, psi_{-k}} = delta_{n-k,-1}, psi_n|0> = 0.
      const int k = n + 1;
      int sign = 1;
      bool hit = false;
      std::vector<int> modes;
      modes.reserve(m.word.size());
      for (size_t i = 0; i < m.word.size(); ++i) {
        int mi = -m.word[i].mode;
        if (!hit && mi == k) {
          hit = true;
          continue;
        }
        if (!hit) sign = -sign;
        modes.push_back(mi);
      }
      if (!hit) continue;
      result.add(fermion_monomial(modes), c * CycloScalar(static_cast<long>(sign)));
    }
  }
  return result;
}

}  // namespace permzhu
