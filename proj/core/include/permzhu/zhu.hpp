#pragma once

#include <string>
#include <vector>

#include "permzhu/errors.hpp"
#include "permzhu/linalg.hpp"
#include "permzhu/tensor.hpp"
#include "permzhu/twist.hpp"

namespace permzhu {

// u o_g v = Res_z (1+z)^{wt u - 1 + delta_r + r/T} z^{-1-delta_r} Y(u,z)v,
// extended bilinearly after splitting u into (h-eigenvalue, weight)
// bihomogeneous pieces.  Every output component has weight <= wt u + wt v + 1.
TensorState circle_g(const Twist& twist, const TensorState& u, const TensorState& v);

// u *_g v = Res_z (1+z)^{wt u} z^{-1} Y(u,z)v on the h-invariant part of u;
// eigencomponents with r != 0 contribute zero.
TensorState star_g(const Twist& twist, const TensorState& u, const TensorState& v);

// Row-reduced exact span of all u o_g v over ordered basis pairs with
// wt u + wt v <= wgen, stored on the basis columns of weight <= wstore.
// wstore >= wgen + 1 captures every generated component exactly.
class OSpan {
 public:
  OSpan(const TensorAlgebra& alg, Weight wgen, Weight wstore);

  Weight wgen() const { return wgen_; }
  Weight wstore() const { return wstore_; }
  const std::vector<TensorMonomial>& columns() const { return columns_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  bool is_pivot_column(int col) const;

  void insert_state(const TensorState& s);
  // canonical coset representative (idempotent); support must fit wstore
  TensorState reduce(const TensorState& s) const;
  bool contains(const TensorState& s) const { return reduce(s).is_zero(); }

  SparseVec to_sparse(const TensorState& s) const;
  TensorState from_sparse(const SparseVec& v) const;
  SparseVec reduce_sparse(SparseVec v) const;

  // Cache restore: rows must already be in reduced echelon form.
  void load_rows(std::vector<SparseVec> rows, std::vector<int> pivots);

 private:
  Weight wgen_, wstore_;
  std::vector<TensorMonomial> columns_;
  std::map<TensorMonomial, int> col_of_;
  std::vector<SparseVec> rows_;  // ascending pivot, RREF
  std::vector<int> pivots_;
  std::vector<char> pivot_flag_;
};

// Deterministic enumeration and reduction of all basis-pair circle products.
OSpan build_ospan(const Twist& twist, Weight wgen, Weight wstore, int threads = 0);

// A_g^{(N)}: the image of weight <= N classes in the truncated quotient,
// with exact structure constants for *_g.  Construction validates that [1]
// is a two-sided identity, [omega] is central, and the product is
// associative on all stored triples; violations raise CutoffError naming
// the offending entries.
class FiniteAlgebra {
 public:
  size_t dim() const { return labels_.size(); }
  const std::vector<TensorMonomial>& basis() const { return labels_; }
  size_t identity_index() const { return identity_; }
  Weight cutoff() const { return n_; }

  // coordinates of [basis_i *_g basis_j]
  const std::vector<CycloScalar>& sc(size_t i, size_t j) const {
    return sc_[i * labels_.size() + j];
  }
  const std::vector<CycloScalar>& omega_class() const { return omega_class_; }

  // coordinates of [s] over the coset basis; CutoffError if not expressible
  std::vector<CycloScalar> express(const TensorState& s) const;

  friend FiniteAlgebra quotient_algebra(const Twist& twist, const OSpan& ospan, Weight n);

 private:
  const Twist* twist_ = nullptr;
  const OSpan* ospan_ = nullptr;
  Weight n_;
  std::vector<TensorMonomial> labels_;
  RrefSolver images_;
  std::vector<std::vector<CycloScalar>> sc_;
  std::vector<CycloScalar> omega_class_;
  size_t identity_ = 0;
};

FiniteAlgebra quotient_algebra(const Twist& twist, const OSpan& ospan, Weight n);

// Rank-only variant: the dimension of the truncated quotient, without
// structure constants or validations (used for stabilization probes).
size_t quotient_dimension(const Twist& twist, const OSpan& ospan, Weight n);

}  // namespace permzhu
