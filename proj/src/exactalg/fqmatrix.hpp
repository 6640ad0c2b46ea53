#pragma once

#include <vector>

#include "exactalg/fqpoly.hpp"

namespace mgr {

// Dense matrix over a finite field.  Vectors are rows and matrices act on
// the right: v -> v * A.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(FqField F, int rows, int cols);
  static FqMatrix identity(const FqField& F, int n);

  const FqField& field() const { return F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  FqElem& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  FqElem at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const FqElem* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
  FqElem* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

  FqMatrix operator*(const FqMatrix& o) const;
  FqMatrix operator+(const FqMatrix& o) const;
  FqMatrix operator-(const FqMatrix& o) const;
  bool operator==(const FqMatrix& o) const;
  FqMatrix scale(FqElem s) const;
  FqMatrix transpose() const;
  bool is_zero() const;

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<int> rref();
  int rank() const;
  // Basis (in reduced echelon form) of {v : v * A = 0}.
  FqMatrix left_kernel() const;
  FqMatrix pow(uint64_t e) const;
  FqPoly charpoly() const;
  FqMatrix eval_poly(const FqPoly& p) const;
  // Image of every entry under a field embedding given as a root of the
  // source field's modulus.
  FqMatrix map_field(const FqField& target, FqElem image_of_gen) const;

 private:
  FqField F_;
  int rows_ = 0, cols_ = 0;
  std::vector<FqElem> a_;
};

// Subspace W (rows in reduced echelon form with given pivots) stable under A;
// returns the matrix of A on W in the basis of W's rows.
FqMatrix restrict_to(const FqMatrix& basis_rref, const std::vector<int>& pivots, const FqMatrix& A);

// Embedding F_{ell^r} -> F_{ell^s}, r | s, sending the generator to the
// least root of the source modulus.
struct FieldEmbedding {
  FqField source, target;
  FqElem image_of_gen;
  FqElem operator()(FqElem a) const;
};
FieldEmbedding canonical_embedding(const FqField& source, const FqField& target);
std::vector<FieldEmbedding> all_embeddings(const FqField& source, const FqField& target);

}  // namespace mgr
