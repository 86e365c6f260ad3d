#include "permzhu/delta.hpp"

#include <algorithm>
#include <sstream>

namespace permzhu {

namespace {

// E(p) for E = sum_j a_j x^{j+1} d/dx, truncated at `order`.
std::vector<Rational> flow_operator(const std::vector<Rational>& a,
                                    const std::vector<Rational>& p, int order) {
  std::vector<Rational> out(static_cast<size_t>(order) + 1, Rational(0));
  for (size_t m = 1; m < p.size(); ++m) {
    if (p[m] == 0) continue;
    Rational dm = Rational(static_cast<long>(m)) * p[m];  // coefficient of x^{m-1} in p'
    for (size_t j = 1; j <= a.size(); ++j) {
      size_t e = m - 1 + j + 1;
      if (e > static_cast<size_t>(order)) break;
      if (a[j - 1] == 0) continue;
      out[e] += a[j - 1] * dm;
    }
  }
  return out;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// scalar k^{-w} for w in (1/2)Z, using sqrt(k) in Q(zeta_{4k}) when needed
CycloScalar k_power_of_weight(int k, const CycloScalar& sqrt_k, int weight2, bool inverse) {
  int w2 = inverse ? -weight2 : weight2;
  // k^{-w2/2}: integer part k^{-ceil(w2/2)} times sqrt(k) on odd w2
  if (w2 % 2 == 0) {
    return CycloScalar(rational_int_pow(k, -w2 / 2));
  }
  // k^{-w2/2} = k^{-(w2+1)/2} * k^{1/2}
  CycloScalar r = CycloScalar(rational_int_pow(k, -(w2 + 1) / 2));
  return r * sqrt_k;
}

}  // namespace

std::vector<Rational> delta_flow_series(const std::vector<Rational>& a, int order) {
  std::vector<Rational> acc(static_cast<size_t>(order) + 1, Rational(0));
  std::vector<Rational> term(static_cast<size_t>(order) + 1, Rational(0));
  if (order >= 1) term[1] = 1;  // the series starts from x
  acc = term;
  for (long n = 1; n <= order; ++n) {
    term = flow_operator(a, term, order);
    for (Rational& c : term) c /= Rational(-n);
    if (all_zero(term)) break;
    for (size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
  }
  return acc;
}

std::vector<Rational> delta_target_series(int k, int order) {
  std::vector<Rational> f(static_cast<size_t>(order) + 1, Rational(0));
  for (int i = 1; i <= std::min(order, k); ++i) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(i));
    Rational c(b);
    c /= Rational(k);
    f[static_cast<size_t>(i)] = c;
  }
  return f;
}

ACoeffs solve_a_coeffs(int k, int truncation) {
  if (k < 1 || truncation < 1) throw std::invalid_argument("solve_a_coeffs: k, J must be >= 1");
  ACoeffs out;
  out.k = k;
  out.truncation = truncation;
  std::vector<Rational> target = delta_target_series(k, truncation + 1);
  for (int j = 1; j <= truncation; ++j) {
    // With a_1..a_{j-1} fixed and a_j..a_J = 0, the x^{j+1} coefficient of
    // exp(-E)x is (known) - a_j; the system is triangular.
    std::vector<Rational> flow = delta_flow_series(out.a, j + 1);
    out.a.push_back(flow[static_cast<size_t>(j) + 1] - target[static_cast<size_t>(j) + 1]);
  }
  return out;
}

State apply_delta1(const VosaSpec& alg, const ACoeffs& coeffs, const State& s) {
  if (s.is_zero()) return s;
  if (coeffs.truncation < s.max_weight().twice() / 2)
    throw std::invalid_argument("apply_delta1: truncation " + std::to_string(coeffs.truncation) +
                                " too small for weight " + s.max_weight().to_string());
  const CycloScalar sqrt_k = CycloScalar::sqrt_of_integer(static_cast<unsigned>(coeffs.k));

  State scaled;
  for (const auto& [m, c] : s.terms())
    scaled.add(m, c * k_power_of_weight(coeffs.k, sqrt_k, m.weight2, false));

  // exp(sum_j a_j L(j)) is locally nilpotent: each L(j) strictly lowers weight.
  State acc = scaled;
  State term = scaled;
  for (long n = 1;; ++n) {
    State next;
    for (int j = 1; j <= coeffs.truncation; ++j) {
      if (coeffs.at(j) == 0) continue;
      if (term.max_weight().twice() < 2 * j) continue;
      State lj = alg.virasoro(j, term);
      if (!lj.is_zero()) next += lj * CycloScalar(coeffs.at(j));
    }
    if (next.is_zero()) break;
    term = next * CycloScalar(Rational(1, n));
    acc += term;
  }
  return acc;
}

State apply_delta1_inverse(const VosaSpec& alg, const ACoeffs& coeffs, const State& s) {
  if (s.is_zero()) return s;
  if (coeffs.truncation < s.max_weight().twice() / 2)
    throw std::invalid_argument("apply_delta1_inverse: truncation too small for weight " +
                                s.max_weight().to_string());
  const CycloScalar sqrt_k = CycloScalar::sqrt_of_integer(static_cast<unsigned>(coeffs.k));

  State acc = s;
  State term = s;
  for (long n = 1;; ++n) {
    State next;
    for (int j = 1; j <= coeffs.truncation; ++j) {
      if (coeffs.at(j) == 0) continue;
      if (term.max_weight().twice() < 2 * j) continue;
      State lj = alg.virasoro(j, term);
      if (!lj.is_zero()) next += lj * CycloScalar(-coeffs.at(j));
    }
    if (next.is_zero()) break;
    term = next * CycloScalar(Rational(1, n));
    acc += term;
  }

  State out;
  for (const auto& [m, c] : acc.terms())
    out.add(m, c * k_power_of_weight(coeffs.k, sqrt_k, m.weight2, true));
  return out;
}

StateSeries delta_at_one_plus_z(const VosaSpec& alg, const ACoeffs& coeffs, const State& u,
                                int max_exp) {
  const int k = coeffs.k;
  const CycloScalar sqrt_k = CycloScalar::sqrt_of_integer(static_cast<unsigned>(k));

  // (k^{1/2})^{-2L(0)} ((1+z)^{(k-1)/2k})^{-2L(0)} u, one weight at a time:
  // scalar k^{-m} (1+z)^{-(k-1)m/k} on the weight-m component.
  StateSeries base(max_exp);
  for (const auto& [m, c] : u.terms()) {
    Rational alpha(static_cast<long>(-(k - 1)) * m.weight2, 2L * k);
    alpha.canonicalize();
    ScalarSeries f = ScalarSeries::binomial_power(alpha, max_exp)
                         .scaled(c * k_power_of_weight(k, sqrt_k, m.weight2, false));
    StateSeries piece(max_exp);
    piece.add(0, State::of(m));
    base = base + piece.scaled(f);
  }

  // exp(sum_j a_j (1+z)^{-j/k} L(j)); the negative exponent makes the
  // conjugation identity hold at truncated order (checked coefficientwise)
  StateSeries acc = base;
  StateSeries term = base;
  for (long n = 1;; ++n) {
    StateSeries next(max_exp);
    for (int j = 1; j <= coeffs.truncation; ++j) {
      if (coeffs.at(j) == 0) continue;
      Rational jk(-j, k);
      jk.canonicalize();
      ScalarSeries f = ScalarSeries::binomial_power(jk, max_exp).scaled(CycloScalar(coeffs.at(j)));
      StateSeries lj = term.map([&](const State& s) { return alg.virasoro(j, s); });
      if (!lj.is_zero()) next = next + lj.scaled(f);
    }
    if (next.is_zero()) break;
    StateSeries scaled = next.map([&](const State& s) { return s * CycloScalar(Rational(1, n)); });
    term = scaled;
    acc = acc + term;
  }
  return acc;
}

ConjugationReport verify_conjugation(const VosaSpec& alg, const ACoeffs& coeffs, const State& u,
                                     int order, Weight test_weight) {
  ConjugationReport report;
  const int k = coeffs.k;
  const int uw2 = u.max_weight().twice();
  if (coeffs.truncation < (uw2 + test_weight.twice()) / 2)
    throw std::invalid_argument("verify_conjugation: truncation too small");

  for (const Monomial& wmono : alg.basis_upto(test_weight)) {
    const State w = State::of(wmono);
    const int n_hi = (uw2 + wmono.weight2) / 2;  // u'_n w = 0 beyond
    const int margin = n_hi + 2;
    const int max_exp = order + margin;

    // left side: sum_n Delta (u_n (Delta^{-1} w)) z^{-n-1}
    StateSeries lhs(max_exp);
    const State w_pre = apply_delta1_inverse(alg, coeffs, w);
    for (int n = -(order + 1); n <= n_hi; ++n) {
      State t = alg.nth_product(u, n, w_pre);
      if (t.is_zero()) continue;
      lhs.add(-n - 1, apply_delta1(alg, coeffs, t));
    }

    // right side: Y(Delta(1+z)u, (1+z)^{1/k} - 1) w
    Rational inv_k(1, k);
    ScalarSeries x = ScalarSeries::binomial_power(inv_k, max_exp);
    x.add(0, CycloScalar(-1L));  // (1+z)^{1/k} - 1, valuation 1
    ScalarSeries x_inv = x.inverse();

    StateSeries rhs(max_exp);
    StateSeries du = delta_at_one_plus_z(alg, coeffs, u, max_exp);
    for (const auto& [p, up] : du.terms()) {
      const int local_hi = (up.max_weight().twice() + wmono.weight2) / 2;
      for (int n = p - max_exp - 1; n <= local_hi; ++n) {
        State t = alg.nth_product(up, n, w);
        if (t.is_zero()) continue;
        ScalarSeries xp = (n >= 0) ? x_inv.pow(n + 1) : x.pow(-n - 1);
        StateSeries piece(max_exp);
        piece.add(p, t);
        rhs = rhs + piece.scaled(xp);
      }
    }

    StateSeries lhs_cut = lhs.truncated(order);
    StateSeries rhs_cut = rhs.truncated(order);
    StateSeries diff = lhs_cut - rhs_cut;
    report.coefficients_checked += static_cast<long>(lhs_cut.terms().size());
    if (!diff.is_zero()) {
      report.ok = false;
      std::ostringstream os;
      const auto& [e, d] = *diff.terms().begin();
      os << "first mismatch on test state " << label(wmono) << " at z0^" << e << ": "
         << d.to_string();
      report.mismatch = os.str();
      return report;
    }
  }
  return report;
}

}  // namespace permzhu
