#pragma once

#include <string>
#include <utility>
#include <vector>

#include "exactalg/fq.hpp"

namespace mgr {

// Dense univariate polynomial over a finite field, coefficients low to high,
// no trailing zeros (the zero polynomial has no coefficients).
class FqPoly {
 public:
  FqPoly() = default;
  explicit FqPoly(FqField F) : F_(std::move(F)) {}
  FqPoly(FqField F, std::vector<FqElem> c);
  static FqPoly constant(const FqField& F, FqElem c);
  static FqPoly x(const FqField& F);
  static FqPoly from_ints(const FqField& F, const std::vector<int64_t>& c);

  const FqField& field() const { return F_; }
  const std::vector<FqElem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  FqElem lead() const { return c_.back(); }
  FqElem operator[](size_t i) const { return i < c_.size() ? c_[i] : FqElem{0}; }
  bool is_monic() const { return !c_.empty() && c_.back() == F_.one(); }

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly scale(FqElem s) const;
  bool operator==(const FqPoly& o) const { return F_ == o.F_ && c_ == o.c_; }
  bool operator<(const FqPoly& o) const;

  FqPoly monic() const;
  FqPoly derivative() const;
  FqElem eval(FqElem a) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void strip();
  FqField F_;
  std::vector<FqElem> c_;
};

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b);
FqPoly operator%(const FqPoly& a, const FqPoly& b);
FqPoly poly_gcd(const FqPoly& a, const FqPoly& b);
FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m);
FqPoly powmod(const FqPoly& base, const Int& e, const FqPoly& m);
bool is_irreducible(const FqPoly& f);

struct PolyFactor {
  FqPoly factor;  // monic irreducible
  int multiplicity = 1;
};

// Monic irreducible factorisation, factors sorted by degree then
// coefficients.  Throws DomainError for the zero polynomial.
std::vector<PolyFactor> poly_factor_fq(const FqPoly& f);
std::vector<std::pair<FqPoly, int>> squarefree_factorization(const FqPoly& f);
// Distinct-degree split of a monic squarefree polynomial.
std::vector<std::pair<FqPoly, int>> distinct_degree_factorization(const FqPoly& f);
std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, int d, uint64_t seed = 0);
// Roots (with no repetition) of f in its coefficient field.
std::vector<FqElem> poly_roots(const FqPoly& f);

// Minimal polynomial of a over the prime field, coefficients in the prime field.
FqPoly minpoly_prime_field(const FqField& F, FqElem a);

// Integer polynomial parsing/printing, e.g. "x^2+3*x+3".
std::vector<Int> parse_int_poly(const std::string& s);
std::string int_poly_to_string(const std::vector<Int>& c, const std::string& var = "x");

}  // namespace mgr
