#pragma once

#include <utility>
#include <vector>

#include "exactalg/numtheory.hpp"

namespace mgr {

// Sparse rational vector, entries sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rat>>;

void sparse_axpy(SparseVec& y, const Rat& a, const SparseVec& x);  // y += a x
SparseVec sparse_scale(const SparseVec& x, const Rat& a);
Rat sparse_get(const SparseVec& x, int idx);

// Incremental row echelon form over Q with leading-column pivots.
class RatEchelon {
 public:
  explicit RatEchelon(int ncols);

  // Returns true when v was independent of the rows seen so far.
  bool add_row(const SparseVec& v);
  // Reduce every row against later pivots (reduced echelon form).
  void finalize();

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  std::vector<int> pivots() const;
  std::vector<int> free_columns() const;
  const std::vector<SparseVec>& rows() const { return rows_; }
  // Solutions of the row equations, one per free column, each with a 1 in
  // its free column and zeros in the other free columns.
  std::vector<SparseVec> kernel_basis() const;

 private:
  int ncols_;
  std::vector<SparseVec> rows_;
  std::vector<int> pivot_row_;
  std::vector<Rat> work_;
  bool reduced_ = false;
};

// Dense rational matrix helpers (row vectors).
using RatMatrix = std::vector<std::vector<Rat>>;
RatMatrix rat_mul(const RatMatrix& a, const RatMatrix& b);
int rat_rank(RatMatrix m);

}  // namespace mgr
