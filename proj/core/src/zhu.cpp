#include "permzhu/zhu.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

namespace permzhu {

namespace {

std::map<int, TensorState> split_by_weight(const TensorState& s) {
  std::map<int, TensorState> parts;
  for (const auto& [m, c] : s.terms()) parts[m.weight2].add(m, c);
  return parts;
}

Rational half(int twice) {
  Rational r(twice, 2);
  r.canonicalize();
  return r;
}

}  // namespace

TensorState circle_g(const Twist& twist, const TensorState& u, const TensorState& v) {
  const TensorAlgebra& alg = twist.algebra();
  const int T = twist.T();
  if (u.is_zero() || v.is_zero()) return TensorState::zero();
  const int vmax2 = v.max_weight().twice();

  TensorState out;
  for (int r = 0; r < T; ++r) {
    TensorState ur = twist.project(r, u);
    if (ur.is_zero()) continue;
    const int delta = (r == 0) ? 1 : 0;
    for (const auto& [w2, comp] : split_by_weight(ur)) {
      Rational rT(r, T);
      rT.canonicalize();
      const Rational alpha = half(w2) - 1 + delta + rT;
      const long imax = (w2 + vmax2) / 2 + delta;
      for (long i = 0; i <= imax; ++i) {
        Rational c = binomial(alpha, static_cast<unsigned long>(i));
        if (c == 0) continue;
        TensorState term = alg.nth_product(comp, static_cast<std::int32_t>(i - 1 - delta), v);
        if (!term.is_zero()) out += term * CycloScalar(c);
      }
    }
  }
  return out;
}

TensorState star_g(const Twist& twist, const TensorState& u, const TensorState& v) {
  const TensorAlgebra& alg = twist.algebra();
  if (u.is_zero() || v.is_zero()) return TensorState::zero();
  TensorState u0 = twist.project(0, u);
  if (u0.is_zero()) return TensorState::zero();
  const int vmax2 = v.max_weight().twice();

  TensorState out;
  for (const auto& [w2, comp] : split_by_weight(u0)) {
    const Rational alpha = half(w2);
    const long imax = (w2 + vmax2) / 2;
    for (long i = 0; i <= imax; ++i) {
      Rational c = binomial(alpha, static_cast<unsigned long>(i));
      if (c == 0) continue;
      TensorState term = alg.nth_product(comp, static_cast<std::int32_t>(i - 1), v);
      if (!term.is_zero()) out += term * CycloScalar(c);
    }
  }
  return out;
}

OSpan::OSpan(const TensorAlgebra& alg, Weight wgen, Weight wstore)
    : wgen_(wgen), wstore_(wstore) {
  if (wstore.twice() < wgen.twice() + 2)
    throw std::invalid_argument("OSpan: need wstore >= wgen + 1 to hold every relation");
  columns_ = alg.basis_upto(wstore);
  for (size_t i = 0; i < columns_.size(); ++i) col_of_.emplace(columns_[i], static_cast<int>(i));
  pivot_flag_.assign(columns_.size(), 0);
}

bool OSpan::is_pivot_column(int col) const {
  return col >= 0 && static_cast<size_t>(col) < pivot_flag_.size() && pivot_flag_[static_cast<size_t>(col)];
}

SparseVec OSpan::to_sparse(const TensorState& s) const {
  SparseVec v;
  v.reserve(s.size());
  std::map<int, CycloScalar> tmp;
  for (const auto& [m, c] : s.terms()) {
    auto it = col_of_.find(m);
    if (it == col_of_.end()) {
      throw CutoffError("state support " + label(m) + " (weight " + m.weight().to_string() +
                        ") exceeds storage cutoff " + wstore_.to_string());
    }
    tmp.emplace(it->second, c);
  }
  return sparse_from_map(tmp);
}

TensorState OSpan::from_sparse(const SparseVec& v) const {
  TensorState s;
  for (const auto& [col, c] : v) s.add(columns_[static_cast<size_t>(col)], c);
  return s;
}

// Pivots sit on the trailing (highest-weight) coordinate of each row, so
// canonical coset representatives live at the lowest weights: relations push
// high-weight monomials down, matching the usual Zhu-algebra reduction.
SparseVec OSpan::reduce_sparse(SparseVec v) const {
  for (const SparseVec& row : rows_) {
    if (v.empty()) break;
    int pivot = row.back().first;
    auto it = std::lower_bound(v.begin(), v.end(), pivot,
                               [](const auto& p, int col) { return p.first < col; });
    if (it == v.end() || it->first != pivot) continue;
    sparse_axpy(v, it->second, row);
  }
  return v;
}

TensorState OSpan::reduce(const TensorState& s) const { return from_sparse(reduce_sparse(to_sparse(s))); }

void OSpan::insert_state(const TensorState& s) {
  if (s.is_zero()) return;
  SparseVec v = reduce_sparse(to_sparse(s));
  if (v.empty()) return;
  CycloScalar inv = v.back().second.inverse();
  for (auto& [col, c] : v) c *= inv;
  int pivot = v.back().first;
  for (SparseVec& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const auto& p, int col) { return p.first < col; });
    if (it == row.end() || it->first != pivot) continue;
    sparse_axpy(row, it->second, v);
  }
  auto pos = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                              [](const SparseVec& r, int p) { return r.back().first > p; });
  size_t idx = static_cast<size_t>(pos - rows_.begin());
  rows_.insert(pos, std::move(v));
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(idx), pivot);
  pivot_flag_[static_cast<size_t>(pivot)] = 1;
}

void OSpan::load_rows(std::vector<SparseVec> rows, std::vector<int> pivots) {
  rows_ = std::move(rows);
  pivots_ = std::move(pivots);
  pivot_flag_.assign(columns_.size(), 0);
  for (int p : pivots_) {
    if (p < 0 || static_cast<size_t>(p) >= columns_.size())
      throw std::invalid_argument("OSpan::load_rows: pivot out of range");
    pivot_flag_[static_cast<size_t>(p)] = 1;
  }
}

OSpan build_ospan(const Twist& twist, Weight wgen, Weight wstore, int threads) {
  const TensorAlgebra& alg = twist.algebra();
  OSpan span(alg, wgen, wstore);

  std::vector<TensorMonomial> basis = alg.basis_upto(wgen);
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      if (basis[i].weight2 + basis[j].weight2 <= wgen.twice()) pairs.emplace_back(i, j);
    }
  }

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, 8);
  std::vector<TensorState> products(pairs.size());
  if (workers <= 1 || pairs.size() < 32) {
    for (size_t t = 0; t < pairs.size(); ++t) {
      products[t] = circle_g(twist, TensorState::of(basis[pairs[t].first]),
                             TensorState::of(basis[pairs[t].second]));
    }
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
      futs.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          size_t t = next.fetch_add(1);
          if (t >= pairs.size()) return;
          products[t] = circle_g(twist, TensorState::of(basis[pairs[t].first]),
                                 TensorState::of(basis[pairs[t].second]));
        }
      }));
    }
    for (auto& f : futs) f.get();
  }
  // serialized merge in deterministic pair order
  for (const TensorState& p : products) span.insert_state(p);
  return span;
}

FiniteAlgebra quotient_algebra(const Twist& twist, const OSpan& ospan, Weight n) {
  if (n > ospan.wgen())
    throw std::invalid_argument("quotient_algebra: report cutoff exceeds generation cutoff");
  if (2 * n.twice() > ospan.wstore().twice())
    throw CutoffError("quotient_algebra: products of weight-" + n.to_string() +
                      " classes exceed storage cutoff " + ospan.wstore().to_string());

  const TensorAlgebra& alg = twist.algebra();
  FiniteAlgebra a;
  a.twist_ = &twist;
  a.ospan_ = &ospan;
  a.n_ = n;

  for (const TensorMonomial& m : alg.basis_upto(n)) {
    SparseVec red = ospan.reduce_sparse(ospan.to_sparse(TensorState::of(m)));
    if (a.images_.insert(std::move(red))) a.labels_.push_back(m);
  }
  if (a.labels_.empty() || !(a.labels_[0] == alg.vacuum()))
    throw CutoffError("quotient_algebra: vacuum class degenerated to zero");
  a.identity_ = 0;

  const size_t d = a.labels_.size();
  a.sc_.resize(d * d);
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      TensorState prod =
          star_g(twist, TensorState::of(a.labels_[i]), TensorState::of(a.labels_[j]));
      auto combo = a.images_.solve(ospan.reduce_sparse(ospan.to_sparse(prod)));
      if (!combo) {
        throw CutoffError("quotient_algebra: [" + label(a.labels_[i]) + " * " +
                          label(a.labels_[j]) + "] not spanned by weight <= " + n.to_string() +
                          " classes (raise the cutoffs)");
      }
      a.sc_[i * d + j] = std::move(*combo);
    }
  }

  // [1] must be a two-sided identity for the stored constants.
  for (size_t j = 0; j < d; ++j) {
    for (size_t t = 0; t < d; ++t) {
      CycloScalar want = (t == j) ? CycloScalar::one() : CycloScalar::zero();
      if (!(a.sc_[a.identity_ * d + j][t] == want) || !(a.sc_[j * d + a.identity_][t] == want)) {
        throw CutoffError("quotient_algebra: [1] fails as identity on [" + label(a.labels_[j]) +
                          "]");
      }
    }
  }

  // [omega] must be central.
  {
    auto omega = a.images_.solve(ospan.reduce_sparse(ospan.to_sparse(alg.omega())));
    if (!omega)
      throw CutoffError("quotient_algebra: [omega] not expressible at cutoff " + n.to_string());
    a.omega_class_ = std::move(*omega);
    for (size_t j = 0; j < d; ++j) {
      for (size_t t = 0; t < d; ++t) {
        CycloScalar lhs = CycloScalar::zero(), rhs = CycloScalar::zero();
        for (size_t m = 0; m < d; ++m) {
          lhs += a.omega_class_[m] * a.sc_[m * d + j][t];
          rhs += a.omega_class_[m] * a.sc_[j * d + m][t];
        }
        if (!(lhs == rhs))
          throw CutoffError("quotient_algebra: [omega] fails to commute with [" +
                            label(a.labels_[j]) + "]");
      }
    }
  }

  // Associativity on all stored triples, contracted through the constants.
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) {
      for (size_t l = 0; l < d; ++l) {
        for (size_t t = 0; t < d; ++t) {
          CycloScalar lhs = CycloScalar::zero(), rhs = CycloScalar::zero();
          for (size_t m = 0; m < d; ++m) {
            lhs += a.sc_[i * d + j][m] * a.sc_[m * d + l][t];
            rhs += a.sc_[j * d + l][m] * a.sc_[i * d + m][t];
          }
          if (!(lhs == rhs)) {
            throw CutoffError("quotient_algebra: associativity fails on ([" +
                              label(a.labels_[i]) + "],[" + label(a.labels_[j]) + "],[" +
                              label(a.labels_[l]) + "])");
          }
        }
      }
    }
  }
  return a;
}

size_t quotient_dimension(const Twist& twist, const OSpan& ospan, Weight n) {
  if (n > ospan.wgen())
    throw std::invalid_argument("quotient_dimension: report cutoff exceeds generation cutoff");
  const TensorAlgebra& alg = twist.algebra();
  RrefSolver images;
  for (const TensorMonomial& m : alg.basis_upto(n)) {
    images.insert(ospan.reduce_sparse(ospan.to_sparse(TensorState::of(m))));
  }
  return images.rank();
}

std::vector<CycloScalar> FiniteAlgebra::express(const TensorState& s) const {
  auto combo = images_.solve(ospan_->reduce_sparse(ospan_->to_sparse(s)));
  if (!combo)
    throw CutoffError("FiniteAlgebra::express: class not spanned at cutoff " + n_.to_string());
  return *combo;
}

}  // namespace permzhu
