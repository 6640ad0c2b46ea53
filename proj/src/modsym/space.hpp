#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "exactalg/lattice.hpp"
#include "exactalg/ratlinalg.hpp"
#include "modsym/manin.hpp"

namespace mgr {

// Persistent store for ambient operator matrices, keyed by level, weight and label.
class MatrixStore {
 public:
  virtual ~MatrixStore() = default;
  virtual std::optional<IntMatrix> load(int64_t level, int weight, const std::string& label) = 0;
  virtual void store(int64_t level, int weight, const std::string& label, const IntMatrix& m) = 0;
};

struct SpaceOptions {
  // Refuse presentations with more Manin generators than this.
  int64_t max_generators = 400000;
  std::shared_ptr<MatrixStore> store;
};

using IntMatrixPtr = std::shared_ptr<const IntMatrix>;

// Weight-k modular symbols for Gamma_H(n): Manin symbols modulo the 2- and
// 3-term relations, as a lattice with a fixed integral basis.  Operators act
// on row vectors.
class ModularSymbols {
 public:
  static std::shared_ptr<const ModularSymbols> build(const SubgroupH& H, int weight, const SpaceOptions& opts = {});

  int64_t level() const { return H_.level(); }
  int weight() const { return k_; }
  const SubgroupH& group() const { return H_; }
  int dimension() const { return dim_; }
  int64_t generator_count() const { return static_cast<int64_t>(k_ - 1) * classes_.count(); }
  // Cache label prefix identifying the group.
  std::string group_label() const;

  // T_n from Merel's family; for n sharing a factor with the level this is U_n.
  IntMatrixPtr hecke(int64_t n) const;
  IntMatrixPtr diamond(int64_t d) const;
  IntMatrixPtr star() const;
  // Rows: boundary of each basis vector in the cusp coordinates.
  const RatMatrix& boundary() const { return boundary_; }
  int cusp_count() const { return boundary_.empty() ? 0 : static_cast<int>(boundary_[0].size()); }

  // Lattice coordinates of the Manin symbol [X^i Y^(k-2-i), (u, v)].
  std::vector<Int> symbol(int i, int64_t u, int64_t v) const;

 private:
  ModularSymbols(const SubgroupH& H, int weight) : H_(H), k_(weight), classes_(H, weight) {}
  void present();
  void compute_boundary();

  using Accum = std::vector<Int>;
  // acc += coeff * [row i of P.g, (u, v) g] for the generator (class c, monomial i).
  void add_image(Accum& acc, int c, int i, const Mat2& g, const std::vector<std::vector<Int>>& poly, const Int& coeff) const;
  void add_generator(Accum& acc, int c, int i, const Int& coeff) const;
  IntMatrix to_lattice_rows(std::vector<Accum> rows_on_free) const;
  IntMatrixPtr cached(const std::string& label, const std::function<IntMatrix()>& make) const;

  SubgroupH H_;
  int k_;
  PairClasses classes_;
  SpaceOptions opts_;
  int dim_ = 0;
  // generator -> (column, sign) into the reduced generators, column -1 when zero
  std::vector<std::pair<int, int>> gen_col_;
  // column -> integral coordinates in the lattice basis
  std::vector<std::vector<std::pair<int, Int>>> col_image_;
  // basis generators as (class, monomial) pairs
  std::vector<std::pair<int, int>> basis_gens_;
  // lattice basis in terms of basis_gens_ (empty when it is the identity)
  IntMatrix lattice_num_;
  Int lattice_den_ = 1;
  RatMatrix boundary_;

  mutable std::mutex mu_;
  mutable std::map<std::string, IntMatrixPtr> ops_;
};

using SpacePtr = std::shared_ptr<const ModularSymbols>;

// Subspace of an ambient space, spanned by primitive integral rows in
// lattice coordinates.
struct Subspace {
  SpacePtr ambient;
  IntMatrix basis;
  bool cuspidal = false;
  bool plus = false;
  std::optional<SubgroupH> invariant_under;

  int dimension() const { return static_cast<int>(basis.size()); }
};

Subspace whole_space(const SpacePtr& s);
Subspace cuspidal_subspace(const Subspace& s);
Subspace star_plus_subspace(const Subspace& s);
// Vectors fixed by every diamond operator <h>, h in H (H at the ambient level).
Subspace h_invariant_subspace(const Subspace& s, const SubgroupH& H);
// The plus part of the cuspidal subspace of the whole space.
Subspace plus_cuspidal(const SpacePtr& s);

// A subspace reduced modulo ell after saturation at ell, with operators
// restricted to it.
class ReducedSpace {
 public:
  ReducedSpace(const Subspace& s, uint64_t ell);

  const FqField& field() const { return F_; }
  int dimension() const { return W_.rows(); }
  const Subspace& source() const { return src_; }
  FqMatrix hecke(int64_t n) const { return restrict(*src_.ambient->hecke(n)); }
  FqMatrix diamond(int64_t d) const { return restrict(*src_.ambient->diamond(d)); }
  FqMatrix star() const { return restrict(*src_.ambient->star()); }
  FqMatrix restrict(const IntMatrix& T) const;

 private:
  Subspace src_;
  FqField F_;
  FqMatrix W_;
  std::vector<int> pivots_;
};

FqMatrix reduce_matrix(const IntMatrix& m, const FqField& F);

}  // namespace mgr
