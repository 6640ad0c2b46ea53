#pragma once

#include <cstdint>
#include <vector>

#include "exactalg/fqmatrix.hpp"
#include "exactalg/numtheory.hpp"

namespace mgr {

using IntMatrix = std::vector<std::vector<Int>>;

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);

// Nonzero rows of the row-style Hermite normal form of the row lattice.
IntMatrix hnf_rows(IntMatrix m);

// Diagonal of the Smith normal form (nonzero entries, each dividing the next).
std::vector<Int> smith_diagonal(IntMatrix m);

struct LatticeQuotient {
  int rank = 0;
  // Prime-power invariants of the torsion subgroup, ascending.
  std::vector<Int> torsion;
  // Lifts of a basis of the torsion-free quotient, in ambient coordinates.
  IntMatrix free_basis;
};

// Quotient of the lattice spanned by `generators` by the sublattice spanned
// by `relations` (rows of integer vectors of equal length).
LatticeQuotient lattice_quotient(const IntMatrix& generators, const IntMatrix& relations);

// Prime-power decomposition of a list of cyclic orders.
std::vector<Int> primary_invariants(const std::vector<Int>& orders);

// p-adic valuation of a nonzero rational.
int valuation(const Rat& x, uint64_t p);

// A basis of (span_Q B) intersected with Z_(p)^n: every vector p-integral
// and the reduction mod p of full rank.  Input rows must be independent.
std::vector<std::vector<Rat>> saturate_at_prime(std::vector<std::vector<Rat>> basis, uint64_t p);

// Reduction mod p of p-integral rational rows.
FqMatrix reduce_rows(const std::vector<std::vector<Rat>>& rows, const FqField& F, int ncols);

}  // namespace mgr
