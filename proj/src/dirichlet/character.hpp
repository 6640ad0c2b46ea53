#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactalg/fqmatrix.hpp"
#include "exactalg/numtheory.hpp"

namespace mgr {

// Dirichlet character mod n: generator j of the unit group maps to
// zeta_order^{exponents[j]}.  Always stored with `order` equal to the exact
// order of the character.
class DirichletCharacter {
 public:
  DirichletCharacter() : DirichletCharacter(trivial(1)) {}
  static DirichletCharacter trivial(int64_t n);
  // Exponents on the canonical generators against zeta_m.
  static DirichletCharacter from_exponents(int64_t n, std::vector<int64_t> exps, int64_t m);
  // `n:g1^e1,g2^e2@m` or `triv:n`.
  static DirichletCharacter parse(const std::string& literal);

  int64_t modulus() const { return n_; }
  int64_t order() const { return m_; }
  const std::vector<int64_t>& exponents() const { return e_; }
  const UnitGroupPtr& group() const { return G_; }
  std::string literal() const;

  // t with chi(x) = zeta_order^t; nullopt when gcd(x, n) > 1.
  std::optional<int64_t> value_exponent(int64_t x) const;
  bool is_trivial() const { return m_ == 1; }
  bool is_even() const;

  DirichletCharacter operator*(const DirichletCharacter& o) const;
  DirichletCharacter pow(int64_t k) const;
  bool operator==(const DirichletCharacter& o) const { return n_ == o.n_ && m_ == o.m_ && e_ == o.e_; }

 private:
  DirichletCharacter(int64_t n, UnitGroupPtr G, std::vector<int64_t> e, int64_t m)
      : n_(n), G_(std::move(G)), e_(std::move(e)), m_(m) {}
  int64_t n_;
  UnitGroupPtr G_;
  std::vector<int64_t> e_;
  int64_t m_;
};

// One (exponent, order) pair per canonical generator: g_j -> zeta_{order}^{exponent}.
DirichletCharacter make_character(int64_t n, const std::vector<std::pair<int64_t, int64_t>>& images);
DirichletCharacter induce(const DirichletCharacter& chi, int64_t n);
int64_t conductor(const DirichletCharacter& chi);
std::vector<int64_t> kernel(const DirichletCharacter& chi);
// All characters mod n, in odometer order over generator images.
std::vector<DirichletCharacter> all_characters(int64_t n);

// Prime above ell in Q(zeta_M): zeta_M maps to g^((q-1)/M) in F_q, q = ell^r,
// r the order of ell mod M and g the least primitive element.
class PlaceAboveEll {
 public:
  static PlaceAboveEll make(uint64_t ell, int64_t max_order);
  // Place serving every character mod n (and the ell-adic cyclotomic one).
  static PlaceAboveEll for_modulus(uint64_t ell, int64_t n);

  uint64_t ell() const { return ell_; }
  int64_t max_order() const { return M_; }
  const FqField& field() const { return F_; }
  FqElem zeta() const { return zeta_; }
  // Image of zeta_m^e; the prime-to-ell part of m must divide max_order.
  FqElem image(int64_t m, int64_t e) const;

 private:
  uint64_t ell_ = 0;
  int64_t M_ = 1;
  FqField F_;
  FqElem zeta_;
};

// Character with values in a finite field.
class ResidualCharacter {
 public:
  ResidualCharacter(int64_t n, FqField F, std::vector<FqElem> gen_values);
  static ResidualCharacter trivial(int64_t n, const FqField& F);
  // x -> (x mod ell)^e on (Z/nZ)^*, ell | n.
  static ResidualCharacter cyclotomic_power(int64_t n, uint64_t ell, int64_t e, const FqField& F);

  int64_t modulus() const { return n_; }
  const FqField& field() const { return F_; }
  const std::vector<FqElem>& generator_values() const { return vals_; }
  // Zero for non-units.
  FqElem value(int64_t x) const;
  std::vector<int64_t> kernel() const;
  bool is_trivial() const;
  // Same character viewed mod a multiple of the modulus.
  ResidualCharacter induce(int64_t n) const;
  ResidualCharacter operator*(const ResidualCharacter& o) const;
  bool operator==(const ResidualCharacter& o) const;
  ResidualCharacter map(const FieldEmbedding& emb) const;

 private:
  int64_t n_;
  UnitGroupPtr G_;
  FqField F_;
  std::vector<FqElem> vals_;
};

ResidualCharacter reduce_mod(const DirichletCharacter& chi, const PlaceAboveEll& place);
DirichletCharacter teichmuller_lift(const ResidualCharacter& chi, const PlaceAboveEll& place);

}  // namespace mgr
