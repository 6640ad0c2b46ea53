#pragma once

#include <string>
#include <vector>

#include "dirichlet/character.hpp"

namespace mgr {

// Subgroup H of (Z/nZ)^*, defining Gamma_H(n) = { [[a,b],[c,d]] : c = 0, d in H mod n }.
class SubgroupH {
 public:
  SubgroupH() = default;
  static SubgroupH from_generators(int64_t n, const std::vector<int64_t>& gens);
  static SubgroupH from_elements(int64_t n, std::vector<int64_t> elems);
  static SubgroupH trivial(int64_t n) { return from_generators(n, {}); }
  static SubgroupH full(int64_t n);
  // "full", "trivial", "pm1" or a comma separated generator list.
  static SubgroupH parse(int64_t n, const std::string& spec);

  int64_t level() const { return n_; }
  const std::vector<int64_t>& elements() const { return elems_; }
  int64_t size() const { return static_cast<int64_t>(elems_.size()); }
  bool contains(int64_t x) const { return member_[mod64(x, n_)] != 0; }
  bool contains_minus_one() const { return contains(n_ - 1); }
  bool is_subgroup_of(const SubgroupH& o) const;
  // Greedy generating set, smallest elements first.
  std::vector<int64_t> generators() const;
  // Image under reduction to a divisor of the level.
  SubgroupH project(int64_t m) const;
  SubgroupH with_minus_one() const;
  bool operator==(const SubgroupH& o) const { return n_ == o.n_ && elems_ == o.elems_; }
  std::string describe() const;

 private:
  int64_t n_ = 1;
  std::vector<int64_t> elems_{0};
  std::vector<char> member_{1};
};

// Every subgroup of (Z/nZ)^*, ordered by size then elements.
std::vector<SubgroupH> intermediate_subgroups(int64_t n);

// Kernel of eps-bar * chi_ell^(k-2-2i) on (Z/N'Z)^*; N' = N ell for k > 2, N for k = 2.
SubgroupH h_from_eigenform(const DirichletCharacter& eps, int k, int i, uint64_t ell, const PlaceAboveEll& place);

int64_t predicted_kernel_order(int64_t m, uint64_t ell, int64_t e);
int64_t index_gamma(const SubgroupH& H);
bool gamma0_criterion(uint64_t ell, int k, int i);

// Gamma_H(n) \ PSL2(Z) via bottom rows (c : d) modulo +-H scaling.
struct CosetTable {
  int64_t level = 1;
  std::vector<std::pair<int64_t, int64_t>> cosets;  // canonical representatives
  std::vector<int> s_perm;                          // right multiplication by [[0,-1],[1,0]]
  std::vector<int> t_perm;                          // right multiplication by [[1,1],[0,1]]
  int index_of(int64_t c, int64_t d) const;

  std::vector<int> class_of_;  // c * level + d -> coset or -1
};

CosetTable coset_table(const SubgroupH& H);

struct CurveInvariants {
  int64_t index = 1;
  int64_t e2 = 0;
  int64_t e3 = 0;
  int64_t cusps = 1;
  int64_t genus = 0;
};

CurveInvariants curve_invariants(const CosetTable& t);
int64_t genus(const SubgroupH& H);

}  // namespace mgr
