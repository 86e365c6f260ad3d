#pragma once

#include <map>
#include <sstream>
#include <string>

#include "permzhu/cyclotomic.hpp"
#include "permzhu/weight.hpp"

namespace permzhu {

// Sparse exact linear combination of basis monomials, keyed in the canonical
// monomial order.  Zero coefficients are never stored.  M must provide
// operator<, operator==, weight() and a free function label(const M&).
template <class M>
class LinearCombo {
 public:
  using Mono = M;
  using Map = std::map<M, CycloScalar>;

  LinearCombo() = default;
  static LinearCombo zero() { return LinearCombo(); }
  static LinearCombo of(const M& m, CycloScalar c = CycloScalar::one()) {
    LinearCombo s;
    s.add(m, c);
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  void add(const M& m, const CycloScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  LinearCombo& operator+=(const LinearCombo& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  LinearCombo& operator-=(const LinearCombo& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend LinearCombo operator+(LinearCombo a, const LinearCombo& b) { return a += b; }
  friend LinearCombo operator-(LinearCombo a, const LinearCombo& b) { return a -= b; }
  LinearCombo operator*(const CycloScalar& c) const {
    LinearCombo r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : terms_) r.add(m, x * c);
    return r;
  }
  LinearCombo operator-() const { return *this * CycloScalar(-1L); }

  CycloScalar coeff(const M& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CycloScalar::zero() : it->second;
  }

  Weight max_weight() const {
    Weight w = Weight::from_halves(0);
    for (const auto& [m, c] : terms_) {
      (void)c;
      if (m.weight() > w) w = m.weight();
    }
    return w;
  }

  bool operator==(const LinearCombo& o) const {
    LinearCombo d = *this;
    d -= o;
    return d.is_zero();
  }
  bool operator!=(const LinearCombo& o) const { return !(*this == o); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.to_string() << "*" << label(m);
    }
    return os.str();
  }

 private:
  Map terms_;
};

}  // namespace permzhu
