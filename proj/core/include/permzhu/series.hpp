#pragma once

#include <map>
#include <stdexcept>

#include "permzhu/cyclotomic.hpp"
#include "permzhu/vosa.hpp"

namespace permzhu {

// Laurent series in one formal variable with integer exponents, truncated
// above a fixed inclusive bound.  Finitely many terms below.  Specializing
// the conjugation identity at z = 1 makes every exponent integral, so the
// exponent lattice (1/k)Z degenerates to Z here.
class ScalarSeries {
 public:
  explicit ScalarSeries(int max_exp) : max_exp_(max_exp) {}

  static ScalarSeries monomial(int e, const CycloScalar& c, int max_exp) {
    ScalarSeries s(max_exp);
    s.add(e, c);
    return s;
  }
  // (1+z)^alpha = sum_i C(alpha, i) z^i
  static ScalarSeries binomial_power(const Rational& alpha, int max_exp) {
    ScalarSeries s(max_exp);
    for (int i = 0; i <= max_exp; ++i) s.add(i, CycloScalar(binomial(alpha, static_cast<unsigned long>(i))));
    return s;
  }

  int max_exp() const { return max_exp_; }
  const std::map<int, CycloScalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add(int e, const CycloScalar& x) {
    if (e > max_exp_ || x.is_zero()) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_.emplace(e, x);
      return;
    }
    it->second += x;
    if (it->second.is_zero()) c_.erase(it);
  }

  ScalarSeries operator+(const ScalarSeries& o) const {
    ScalarSeries r(std::min(max_exp_, o.max_exp_));
    for (const auto& [e, x] : c_) r.add(e, x);
    for (const auto& [e, x] : o.c_) r.add(e, x);
    return r;
  }

  ScalarSeries operator*(const ScalarSeries& o) const {
    ScalarSeries r(std::min(max_exp_, o.max_exp_));
    for (const auto& [e1, x1] : c_) {
      for (const auto& [e2, x2] : o.c_) {
        if (e1 + e2 > r.max_exp_) break;  // o.c_ ascending
        r.add(e1 + e2, x1 * x2);
      }
    }
    return r;
  }

  ScalarSeries scaled(const CycloScalar& x) const {
    ScalarSeries r(max_exp_);
    if (x.is_zero()) return r;
    for (const auto& [e, c] : c_) r.add(e, c * x);
    return r;
  }

  // Requires a nonzero lowest term.
  ScalarSeries inverse() const {
    if (c_.empty()) throw std::domain_error("ScalarSeries: inverting zero");
    const int v = c_.begin()->first;
    const CycloScalar lead = c_.begin()->second;
    const CycloScalar lead_inv = lead.inverse();
    // X = lead z^v (1 + Y), val(Y) >= 1
    ScalarSeries y(max_exp_ + (v > 0 ? v : -v) + 1);
    for (auto it = std::next(c_.begin()); it != c_.end(); ++it)
      y.add(it->first - v, it->second * lead_inv);
    // sum (-Y)^i, truncated at max_exp + v so the z^{-v} shift lands right
    const int inner_cap = max_exp_ + v;
    ScalarSeries acc(inner_cap);
    acc.add(0, CycloScalar::one());
    ScalarSeries pw(inner_cap);
    pw.add(0, CycloScalar::one());
    for (int i = 1; i <= inner_cap; ++i) {
      ScalarSeries yi(inner_cap);
      for (const auto& [e, x] : y.terms()) yi.add(e, -x);
      pw = pw * yi;
      if (pw.is_zero()) break;
      acc = acc + pw;
    }
    ScalarSeries r(max_exp_);
    for (const auto& [e, x] : acc.terms()) r.add(e - v, x * lead_inv);
    return r;
  }

  ScalarSeries pow(long e) const {
    ScalarSeries base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    ScalarSeries acc = monomial(0, CycloScalar::one(), max_exp_);
    for (unsigned long i = 0; i < n; ++i) acc = acc * base;
    return acc;
  }

 private:
  int max_exp_;
  std::map<int, CycloScalar> c_;
};

// Same shape with State coefficients.
class StateSeries {
 public:
  explicit StateSeries(int max_exp) : max_exp_(max_exp) {}

  int max_exp() const { return max_exp_; }
  const std::map<int, State>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add(int e, const State& s) {
    if (e > max_exp_ || s.is_zero()) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
      c_.emplace(e, s);
      return;
    }
    it->second += s;
    if (it->second.is_zero()) c_.erase(it);
  }

  StateSeries operator+(const StateSeries& o) const {
    StateSeries r(std::min(max_exp_, o.max_exp_));
    for (const auto& [e, s] : c_) r.add(e, s);
    for (const auto& [e, s] : o.c_) r.add(e, s);
    return r;
  }

  StateSeries operator-(const StateSeries& o) const {
    StateSeries r(std::min(max_exp_, o.max_exp_));
    for (const auto& [e, s] : c_) r.add(e, s);
    for (const auto& [e, s] : o.c_) r.add(e, -s);
    return r;
  }

  // multiply by a scalar Laurent series
  StateSeries scaled(const ScalarSeries& f) const {
    StateSeries r(std::min(max_exp_, f.max_exp()));
    for (const auto& [e1, s] : c_) {
      for (const auto& [e2, x] : f.terms()) {
        if (e1 + e2 > r.max_exp_) break;
        r.add(e1 + e2, s * x);
      }
    }
    return r;
  }

  // apply a linear state map to every coefficient
  template <class F>
  StateSeries map(F&& f) const {
    StateSeries r(max_exp_);
    for (const auto& [e, s] : c_) r.add(e, f(s));
    return r;
  }

  // restriction to exponents <= bound (for comparisons at the stated order)
  StateSeries truncated(int bound) const {
    StateSeries r(std::min(max_exp_, bound));
    for (const auto& [e, s] : c_) r.add(e, s);
    return r;
  }

  bool operator==(const StateSeries& o) const {
    StateSeries d = *this - o;
    return d.is_zero();
  }

 private:
  int max_exp_;
  std::map<int, State> c_;
};

}  // namespace permzhu
