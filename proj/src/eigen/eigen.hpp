#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exactalg/fqmatrix.hpp"
#include "modsym/space.hpp"

namespace mgr {

struct HeckeOperator {
  enum class Kind { Hecke, Diamond };
  Kind kind = Kind::Hecke;
  int64_t index = 0;
  FqMatrix matrix;  // over the prime field
};

// Simultaneous eigenvalues of a generalized eigenspace, over the field they
// generate.
struct Eigensystem {
  int64_t level = 1;
  int weight = 2;
  FqField field;
  std::map<int64_t, FqElem> ap;       // T_p, or U_p when p divides level * ell
  std::map<int64_t, FqElem> diamond;  // <d> for every unit d mod level
  int multiplicity = 1;
  std::string provenance;

  uint64_t ell() const { return field.ell(); }
  bool is_bad_prime(int64_t p) const { return level % p == 0 || static_cast<uint64_t>(p) == ell(); }
  // Eigenvalue of <d>; d is reduced mod the level and must be a unit.
  FqElem diamond_value(int64_t d) const;
  Eigensystem mapped(const FieldEmbedding& emb) const;
};

// Exhaustive split of F_ell^dim into simultaneous generalized eigenspaces of
// commuting operators, extending the field only when an irreducible factor of
// degree > 1 occurs.  One system per Galois orbit.
std::vector<Eigensystem> decompose(const std::vector<HeckeOperator>& ops, const FqField& F, int dim, int64_t level, int weight);

// Operators of a reduced space: T_p for the given primes (primes dividing
// level * ell only when include_bad) and <d> for every unit d.
std::vector<HeckeOperator> space_operators(const ReducedSpace& R, const std::vector<int64_t>& primes, bool include_bad);
std::vector<Eigensystem> decompose_space(const ReducedSpace& R, const std::vector<int64_t>& primes, bool include_bad = false);

// a_p -> p^j a_p at primes p != ell; diamonds unchanged.
Eigensystem twist_eigensystem(const Eigensystem& sys, int64_t j);

struct MatchReport {
  bool verdict = false;
  int64_t i = 0;
  std::vector<int64_t> checked;
  std::vector<int64_t> skipped;
  std::optional<int64_t> first_failure;
  // Common field and the image of the generator of f's field used for the verdict.
  FqField field;
  std::optional<FqElem> embedding;
  std::optional<bool> weight_congruence;
  std::optional<bool> determinant;
};

// Does a_p(f) = p^i a_p(g) hold for every prime p <= bound, p not dividing
// both levels and ell, present in both systems, for some field embedding?
MatchReport match_twist(const Eigensystem& f, const Eigensystem& g, int64_t i, int64_t bound, bool include_bad = false);

// eps_f(d) d^(k_f - 1) = eps_g(d) d^(k_g - 1 + 2i) for every unit d modulo lcm(levels, ell).
bool determinant_relation(const Eigensystem& f, const Eigensystem& g, int64_t i, const FieldEmbedding& ef, const FieldEmbedding& eg);

}  // namespace mgr
