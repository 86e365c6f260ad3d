#include "permzhu/vosa.hpp"

#include <sstream>

namespace permzhu {

std::string label(const Monomial& m) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < m.word.size(); ++i) {
    if (i) os << ",";
    if (m.word[i].generator != 0) os << "g" << int(m.word[i].generator) << ":";
    os << -m.word[i].mode;
  }
  os << "]";
  return os.str();
}

namespace {

Monomial tail_of(const Monomial& u, const GeneratorInfo& lead) {
  Monomial b;
  b.word.assign(u.word.begin() + 1, u.word.end());
  // applying mode p of a weight-w generator raises weight by w - p - 1
  int lead_shift = lead.weight.twice() - 2 * u.word[0].mode - 2;
  b.weight2 = u.weight2 - lead_shift;
  b.parity = u.parity + lead.parity;
  return b;
}

Rational iterate_coefficient(long m, unsigned long j) {
  // (-1)^j C(-m, j) = C(m+j-1, j), a nonnegative integer.
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m) + j - 1, j);
  return Rational(r);
}

}  // namespace

State VosaSpec::nth_product(const Monomial& u, std::int32_t n, const Monomial& v) const {
  if (u.is_vacuum()) {
    // Y(1,z) = Id
    return n == -1 ? State::of(v) : State::zero();
  }
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(MemoKey{u, n, v});
    if (it != memo_.end()) return it->second;
  }

  const GeneratorInfo& gen = generators().at(u.word[0].generator);
  const std::int32_t p = u.word[0].mode;  // p <= -1 in a basis monomial
  if (p > -1) throw std::logic_error("nth_product: monomial not in creation normal form");
  const long m = -static_cast<long>(p);
  const Monomial b = tail_of(u, gen);
  const State v_state = State::of(v);

  State result;

  // sum_j (-1)^j C(-m,j) a_{(-m-j)} (b_{(n+j)} v)
  for (long j = 0;; ++j) {
    // b_{(n+j)} v vanishes once its weight would go negative
    if (b.weight2 + v.weight2 - 2 * (n + j) - 2 < 0) break;
    State inner = nth_product(b, static_cast<std::int32_t>(n + j), v);
    if (inner.is_zero()) continue;
    State outer = generator_mode(u.word[0].generator, static_cast<std::int32_t>(p - j), inner);
    if (outer.is_zero()) continue;
    result += outer * CycloScalar(iterate_coefficient(m, static_cast<unsigned long>(j)));
  }

  // - (-1)^{|a||b|} (-1)^m sum_j (-1)^j C(-m,j) b_{(-m+n-j)} (a_{(j)} v)
  const bool odd_pair = is_odd(gen.parity) && is_odd(b.parity);
  const long s2 = (odd_pair ? -1 : 1) * (m % 2 != 0 ? -1 : 1);
  for (long j = 0;; ++j) {
    if (gen.weight.twice() + v.weight2 - 2 * j - 2 < 0) break;
    State av = generator_mode(u.word[0].generator, static_cast<std::int32_t>(j), v_state);
    if (av.is_zero()) continue;
    State inner;
    for (const auto& [mono, c] : av.terms()) {
      State piece = nth_product(b, static_cast<std::int32_t>(p + n - j), mono);
      if (!piece.is_zero()) inner += piece * c;
    }
    if (inner.is_zero()) continue;
    result += inner * CycloScalar(Rational(-s2) * iterate_coefficient(m, static_cast<unsigned long>(j)));
  }

  std::lock_guard<std::mutex> lock(memo_mutex_);
  return memo_.emplace(MemoKey{u, n, v}, std::move(result)).first->second;
}

State VosaSpec::nth_product(const State& u, std::int32_t n, const State& v) const {
  State result;
  for (const auto& [mu, cu] : u.terms()) {
    for (const auto& [mv, cv] : v.terms()) {
      State piece = nth_product(mu, n, mv);
      if (!piece.is_zero()) result += piece * (cu * cv);
    }
  }
  return result;
}

State VosaSpec::virasoro(std::int32_t m, const State& s) const {
  return nth_product(conformal_vector(), m + 1, s);
}

}  // namespace permzhu
