#pragma once

#include <map>
#include <optional>
#include <vector>

#include "permzhu/cyclotomic.hpp"

namespace permzhu {

// Sparse vector over integer column ids, ascending, no zeros.
using SparseVec = std::vector<std::pair<int, CycloScalar>>;

SparseVec sparse_from_map(const std::map<int, CycloScalar>& m);

// Incremental exact reduced row echelon form with combination bookkeeping:
// each stored row is remembered as a linear combination of the accepted
// input vectors, so members of the span can be expressed over exactly the
// inputs that created new pivots.
class RrefSolver {
 public:
  // Returns true (and keeps the vector as basis element #rank-1) if it
  // enlarged the span; dependent vectors are discarded.
  bool insert(SparseVec v);

  size_t rank() const { return rows_.size(); }

  // Coefficients c with target = sum_i c_i basis_i, if the target lies in
  // the span.  Size of the result equals rank().
  std::optional<std::vector<CycloScalar>> solve(SparseVec target) const;

  bool contains(SparseVec target) const;

 private:
  struct Row {
    SparseVec vec;                   // normalized: leading coefficient 1
    std::vector<CycloScalar> combo;  // over accepted basis inputs
    int pivot;
  };
  std::vector<Row> rows_;  // ascending pivot order
};

// v -= c * w (sparse, exact)
void sparse_axpy(SparseVec& v, const CycloScalar& c, const SparseVec& w);

// Dense little matrices for the iso reports.
using Matrix = std::vector<std::vector<CycloScalar>>;

Matrix mat_mul(const Matrix& a, const Matrix& b);
bool mat_is_identity(const Matrix& a);
size_t mat_rank(const Matrix& a);

}  // namespace permzhu
