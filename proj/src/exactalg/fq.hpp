#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "exactalg/numtheory.hpp"

namespace mgr {

// Element of F_{ell^r}, stored as sum c_i ell^i of its coordinates on the
// power basis 1, t, ..., t^{r-1}.
struct FqElem {
  uint64_t code = 0;
  auto operator<=>(const FqElem&) const = default;
};

// Finite field with canonical defining polynomial: the least monic
// irreducible of degree r, coefficients compared from the constant term up.
// Two FqField values are equal iff they describe the same (ell, r).
class FqField {
 public:
  FqField() = default;
  static FqField make(uint64_t ell, int degree);

  bool valid() const { return impl_ != nullptr; }
  uint64_t ell() const;
  int degree() const;
  uint64_t size() const;
  // Coefficients low to high, monic, length degree+1.
  const std::vector<uint64_t>& modulus() const;

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  FqElem from_int(int64_t v) const;
  FqElem from_mpz(const Int& v) const;
  // Throws DomainError("non_integral") when ell divides the denominator.
  FqElem from_rat(const Rat& v) const;
  FqElem from_coeffs(const std::vector<uint64_t>& c) const;
  std::vector<uint64_t> coeffs(FqElem a) const;
  // The generator t of the power basis.
  FqElem gen() const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, uint64_t e) const;
  FqElem pow(FqElem a, const Int& e) const;
  FqElem frobenius(FqElem a) const { return pow(a, ell()); }
  bool in_prime_field(FqElem a) const { return a.code < ell(); }
  // Multiplicative order of a nonzero element.
  uint64_t order(FqElem a) const;
  // Least element (by code) generating the multiplicative group.
  FqElem primitive_element() const;
  // Element of exact order m; in fields below 2^62 elements this is the
  // primitive element raised to (q-1)/m.
  FqElem root_of_unity(uint64_t m) const;

  // Polynomial in t, e.g. "3*t^2+t+12"; prime field elements print as integers.
  std::string to_string(FqElem a) const;
  // Signed representative in (-ell/2, ell/2] for prime field elements.
  int64_t signed_value(FqElem a) const;

  bool operator==(const FqField& o) const;
  bool operator!=(const FqField& o) const { return !(*this == o); }

  struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

// Least monic irreducible of given degree over F_ell in the canonical order.
std::vector<uint64_t> canonical_modulus(uint64_t ell, int degree);

}  // namespace mgr
