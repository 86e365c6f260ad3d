#include "permzhu/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace permzhu {

namespace {

// Dense polynomials over Q, ascending coefficients.
using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

// a mod b, b nonzero. Also fills q with the quotient when requested.
Poly poly_divmod(Poly a, const Poly& b, Poly* qout) {
  poly_trim(a);
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    Rational c = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = c;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    poly_trim(a);
    if (a.size() >= b.size() && a.size() + b.size() == 0) break;  // unreachable
  }
  if (qout) *qout = q;
  return a;
}

struct CycloContext {
  unsigned order = 1;
  unsigned degree = 1;                       // phi(order)
  std::vector<Rational> phi;                 // cyclotomic polynomial, monic
  std::vector<std::vector<Rational>> xpow;   // x^{degree+t} mod Phi, t = 0..degree-2
};

const CycloContext& context(unsigned m);

std::vector<Int> compute_cyclotomic(unsigned m) {
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, exact division over Q
  // with an integer result.
  Poly p(m + 1, Rational(0));
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    const std::vector<Int>& phid = cyclotomic_polynomial(d);
    Poly divisor(phid.size());
    for (size_t i = 0; i < phid.size(); ++i) divisor[i] = Rational(phid[i]);
    Poly q;
    Poly rem = poly_divmod(p, divisor, &q);
    if (!rem.empty()) throw std::logic_error("cyclotomic division not exact");
    p = q;
  }
  std::vector<Int> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i].get_den() != 1) throw std::logic_error("cyclotomic coefficient not integral");
    out[i] = p[i].get_num();
  }
  return out;
}

const CycloContext& context(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, CycloContext> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(m);
  if (it != registry.end()) return it->second;

  CycloContext ctx;
  ctx.order = m;
  const std::vector<Int>& phi_int = cyclotomic_polynomial(m);
  ctx.degree = static_cast<unsigned>(phi_int.size() - 1);
  ctx.phi.resize(phi_int.size());
  for (size_t i = 0; i < phi_int.size(); ++i) ctx.phi[i] = Rational(phi_int[i]);

  // x^{d+t} mod Phi, iteratively: shift previous row and reduce once.
  unsigned d = ctx.degree;
  if (d >= 2) {
    ctx.xpow.resize(d - 1);
    std::vector<Rational> cur(d, Rational(0));  // x^d mod Phi = -(phi minus leading)
    for (unsigned i = 0; i < d; ++i) cur[i] = -ctx.phi[i];
    ctx.xpow[0] = cur;
    for (unsigned t = 1; t + 1 < d; ++t) {
      std::vector<Rational> nxt(d, Rational(0));
      // multiply cur by x
      Rational top = cur[d - 1];
      for (unsigned i = d - 1; i >= 1; --i) nxt[i] = cur[i - 1];
      nxt[0] = Rational(0);
      if (top != 0) {
        for (unsigned i = 0; i < d; ++i) nxt[i] += top * (-ctx.phi[i]);
      }
      ctx.xpow[t] = nxt;
      cur = std::move(nxt);
    }
  } else if (d == 1) {
    ctx.xpow.clear();
  }
  auto [pos, inserted] = registry.emplace(m, std::move(ctx));
  (void)inserted;
  return pos->second;
}

// Reduce an arbitrary-degree polynomial mod Phi_m to the power basis.
std::vector<Rational> reduce_mod_phi(unsigned m, Poly p) {
  const CycloContext& ctx = context(m);
  unsigned d = ctx.degree;
  poly_trim(p);
  if (p.size() > 2 * d - 1 || d == 1) {
    // general path
    Poly rem = poly_divmod(std::move(p), ctx.phi, nullptr);
    rem.resize(d, Rational(0));
    return rem;
  }
  std::vector<Rational> out(d, Rational(0));
  for (size_t i = 0; i < p.size() && i < d; ++i) out[i] = p[i];
  for (size_t i = d; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    const std::vector<Rational>& row = ctx.xpow[i - d];
    for (unsigned j = 0; j < d; ++j) out[j] += p[i] * row[j];
  }
  return out;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

}  // namespace

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  unsigned n = m;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const std::vector<Int>& cyclotomic_polynomial(unsigned m) {
  static std::mutex mu;
  static std::map<unsigned, std::vector<Int>> cache;
  if (m == 0) throw std::invalid_argument("cyclotomic_polynomial: order 0");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  std::vector<Int> value;
  if (m == 1) {
    value = {Int(-1), Int(1)};  // x - 1
  } else {
    value = compute_cyclotomic(m);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(value)).first->second;
}

CycloScalar::CycloScalar(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
  if (order_ == 0) throw std::invalid_argument("CycloScalar: order 0");
  unsigned d = euler_phi(order_);
  if (coeffs_.size() != d) throw std::invalid_argument("CycloScalar: wrong coefficient count");
}

CycloScalar CycloScalar::root_of_unity(unsigned order, long a) {
  if (order == 0) throw std::invalid_argument("root_of_unity: order 0");
  long r = a % static_cast<long>(order);
  if (r < 0) r += order;
  Poly p(static_cast<size_t>(r) + 1, Rational(0));
  p[static_cast<size_t>(r)] = 1;
  return CycloScalar(order, reduce_mod_phi(order, std::move(p)));
}

CycloScalar CycloScalar::sqrt_of_integer(unsigned k) {
  if (k == 0) throw std::invalid_argument("sqrt_of_integer: k must be positive");
  unsigned m = 4 * k;
  CycloScalar g = CycloScalar::zero();
  for (unsigned long a = 0; a < m; ++a) {
    g += root_of_unity(m, static_cast<long>((a * a) % m));
  }
  CycloScalar denom = (CycloScalar(1L) + root_of_unity(m, static_cast<long>(k))) * CycloScalar(2L);
  return g * denom.inverse();
}

bool CycloScalar::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycloScalar::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CycloScalar::rational_value() const {
  if (!is_rational()) throw std::domain_error("CycloScalar: not rational: " + to_string());
  return coeffs_[0];
}

CycloScalar CycloScalar::promoted(unsigned new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0)
    throw std::invalid_argument("CycloScalar::promoted: old order must divide new order");
  unsigned step = new_order / order_;
  Poly p(static_cast<size_t>(coeffs_.size() - 1) * step + 1, Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) p[i * step] = coeffs_[i];
  return CycloScalar(new_order, reduce_mod_phi(new_order, std::move(p)));
}

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (Rational& c : r.coeffs_) c = -c;
  return r;
}

CycloScalar CycloScalar::operator+(const CycloScalar& o) const {
  unsigned m = lcm_u(order_, o.order_);
  CycloScalar a = promoted(m), b = o.promoted(m);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
  return a;
}

CycloScalar CycloScalar::operator-(const CycloScalar& o) const { return *this + (-o); }

CycloScalar CycloScalar::operator*(const CycloScalar& o) const {
  unsigned m = lcm_u(order_, o.order_);
  if (m == 1) {
    CycloScalar r;
    r.coeffs_[0] = coeffs_[0] * o.coeffs_[0];
    return r;
  }
  CycloScalar a = promoted(m), b = o.promoted(m);
  if (a.is_zero() || b.is_zero()) {
    return CycloScalar(m, std::vector<Rational>(euler_phi(m), Rational(0)));
  }
  Poly prod = poly_mul(a.coeffs_, b.coeffs_);
  return CycloScalar(m, reduce_mod_phi(m, std::move(prod)));
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw std::domain_error("CycloScalar: inversion of zero");
  if (order_ == 1 || is_rational()) {
    CycloScalar r(Rational(1) / coeffs_[0]);
    return r.promoted(order_);
  }
  // Extended Euclid in Q[x]: s*a + t*Phi = gcd = const, so a^{-1} = s/gcd.
  const CycloContext& ctx = context(order_);
  Poly r0 = ctx.phi, r1 = coeffs_;
  poly_trim(r1);
  Poly s0 = {}, s1 = {Rational(1)};  // coefficients of `a` in r0, r1
  while (!r1.empty() && r1.size() > 1) {
    Poly q;
    Poly rem = poly_divmod(r0, r1, &q);
    Poly s2 = s0;
    Poly qs1 = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
    for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw std::domain_error("CycloScalar: not invertible (degenerate)");
  Rational g = r1[0];
  for (Rational& c : s1) c /= g;
  return CycloScalar(order_, reduce_mod_phi(order_, std::move(s1)));
}

CycloScalar CycloScalar::pow(long e) const {
  CycloScalar base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  CycloScalar acc = CycloScalar::one();
  while (n > 0) {
    if (n & 1UL) acc *= base;
    base *= base;
    n >>= 1UL;
  }
  return acc;
}

bool CycloScalar::operator==(const CycloScalar& o) const {
  unsigned m = lcm_u(order_, o.order_);
  CycloScalar a = promoted(m), b = o.promoted(m);
  return a.coeffs_ == b.coeffs_;
}

std::complex<double> CycloScalar::embed() const {
  const double two_pi = 6.283185307179586476925286766559;
  std::complex<double> zeta = std::polar(1.0, two_pi / static_cast<double>(order_));
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * zeta + std::complex<double>(coeffs_[i].get_d(), 0.0);
  }
  return acc;
}

std::string CycloScalar::to_string() const {
  std::ostringstream os;
  os << "cyclo(" << order_ << ";";
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << rational_to_string(coeffs_[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace permzhu
