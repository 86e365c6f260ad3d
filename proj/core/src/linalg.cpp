#include "permzhu/linalg.hpp"

#include <algorithm>

namespace permzhu {

SparseVec sparse_from_map(const std::map<int, CycloScalar>& m) {
  SparseVec v;
  v.reserve(m.size());
  for (const auto& [c, x] : m)
    if (!x.is_zero()) v.emplace_back(c, x);
  return v;
}

void sparse_axpy(SparseVec& v, const CycloScalar& c, const SparseVec& w) {
  if (c.is_zero() || w.empty()) return;
  SparseVec out;
  out.reserve(v.size() + w.size());
  size_t i = 0, j = 0;
  while (i < v.size() || j < w.size()) {
    if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || w[j].first < v[i].first) {
      CycloScalar x = -(c * w[j].second);
      if (!x.is_zero()) out.emplace_back(w[j].first, std::move(x));
      ++j;
    } else {
      CycloScalar x = v[i].second - c * w[j].second;
      if (!x.is_zero()) out.emplace_back(v[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

bool RrefSolver::insert(SparseVec v) {
  std::vector<CycloScalar> combo(rank() + 1, CycloScalar::zero());
  combo[rank()] = CycloScalar::one();
  for (const Row& row : rows_) {
    if (v.empty()) break;
    auto it = std::lower_bound(v.begin(), v.end(), row.pivot,
                               [](const auto& p, int col) { return p.first < col; });
    if (it == v.end() || it->first != row.pivot) continue;
    CycloScalar c = it->second;
    sparse_axpy(v, c, row.vec);
    for (size_t t = 0; t < row.combo.size(); ++t) combo[t] -= c * row.combo[t];
  }
  if (v.empty()) return false;

  CycloScalar lead = v.front().second;
  CycloScalar inv = lead.inverse();
  for (auto& [col, x] : v) x *= inv;
  for (auto& x : combo) x *= inv;
  Row nr{std::move(v), std::move(combo), 0};
  nr.pivot = nr.vec.front().first;

  for (Row& row : rows_) {
    auto it = std::lower_bound(row.vec.begin(), row.vec.end(), nr.pivot,
                               [](const auto& p, int col) { return p.first < col; });
    if (it == row.vec.end() || it->first != nr.pivot) continue;
    CycloScalar c = it->second;
    sparse_axpy(row.vec, c, nr.vec);
    row.combo.resize(std::max(row.combo.size(), nr.combo.size()), CycloScalar::zero());
    for (size_t t = 0; t < nr.combo.size(); ++t) row.combo[t] -= c * nr.combo[t];
  }

  auto pos = std::lower_bound(rows_.begin(), rows_.end(), nr.pivot,
                              [](const Row& r, int p) { return r.pivot < p; });
  rows_.insert(pos, std::move(nr));
  return true;
}

std::optional<std::vector<CycloScalar>> RrefSolver::solve(SparseVec target) const {
  std::vector<CycloScalar> acc(rank(), CycloScalar::zero());
  for (const Row& row : rows_) {
    if (target.empty()) break;
    auto it = std::lower_bound(target.begin(), target.end(), row.pivot,
                               [](const auto& p, int col) { return p.first < col; });
    if (it == target.end() || it->first != row.pivot) continue;
    CycloScalar c = it->second;
    sparse_axpy(target, c, row.vec);
    for (size_t t = 0; t < row.combo.size(); ++t) acc[t] += c * row.combo[t];
  }
  if (!target.empty()) return std::nullopt;
  return acc;
}

bool RrefSolver::contains(SparseVec target) const { return solve(std::move(target)).has_value(); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return {};
  size_t n = a.size(), m = b[0].size(), inner = b.size();
  Matrix r(n, std::vector<CycloScalar>(m, CycloScalar::zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < inner; ++t) {
      if (a[i][t].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

bool mat_is_identity(const Matrix& a) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j) {
      if (!(a[i][j] == (i == j ? CycloScalar::one() : CycloScalar::zero()))) return false;
    }
  }
  return true;
}

size_t mat_rank(const Matrix& a) {
  RrefSolver s;
  for (const auto& row : a) {
    SparseVec v;
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) v.emplace_back(static_cast<int>(j), row[j]);
    s.insert(std::move(v));
  }
  return s.rank();
}

}  // namespace permzhu
