#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mgr {

using Int = mpz_class;
using Rat = mpq_class;

// Raised for inputs outside the mathematical domain of an operation.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

int64_t gcd64(int64_t a, int64_t b);
int64_t lcm64(int64_t a, int64_t b);
// Least non-negative residue.
int64_t mod64(int64_t a, int64_t m);
uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m);
std::optional<int64_t> invmod64(int64_t a, int64_t m);

bool is_prime(uint64_t n);
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);
std::vector<int64_t> divisors(int64_t n);
std::vector<int64_t> primes_up_to(int64_t bound);
int64_t euler_phi(int64_t n);
int64_t carmichael_lambda(int64_t n);
// Order of a in (Z/m)^*; a must be a unit.
int64_t multiplicative_order(int64_t a, int64_t m);
// Part of n coprime to p.
int64_t prime_to_part(int64_t n, int64_t p);

// (Z/nZ)^* as a product of cyclic groups with fixed generators.
//
// Generators are listed by ascending prime; odd p^e contributes the least
// primitive root (lifted to 1 at the other prime powers), 2^e contributes
// -1 (e >= 2) and 5 (e >= 3).
struct UnitGroup {
  int64_t modulus = 1;
  std::vector<int64_t> generators;
  std::vector<int64_t> orders;

  bool is_unit(int64_t x) const;
  // Exponent vector of x on the generators, nullopt when x is not a unit.
  std::optional<std::vector<int64_t>> dlog(int64_t x) const;
  int64_t element(const std::vector<int64_t>& exps) const;
  std::vector<int64_t> units() const;
  int64_t order() const;

  std::vector<int32_t> table_;  // residue -> row into exps_, -1 for non-units
  std::vector<std::vector<int64_t>> exps_;
};

using UnitGroupPtr = std::shared_ptr<const UnitGroup>;

UnitGroupPtr unit_group(int64_t n);

}  // namespace mgr
