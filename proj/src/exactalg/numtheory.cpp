#include "exactalg/numtheory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace mgr {

int64_t gcd64(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm64(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::abs(a / std::gcd(a, b) * b);
}

int64_t mod64(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

uint64_t mulmod64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod64(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod64(r, base, m);
    base = mulmod64(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::optional<int64_t> invmod64(int64_t a, int64_t m) {
  if (m == 1) return 0;
  int64_t g = m, x = 0, x1 = 1, a1 = mod64(a, m);
  while (a1) {
    int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) return std::nullopt;
  return mod64(x, m);
}

namespace {

bool miller_rabin(uint64_t n) {
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (a % n == 0) continue;
    uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) return n == p;
  }
  if (n < 289) return true;
  return miller_rabin(n);
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  if (n <= 1) return out;
  for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (p > 1000000 && is_prime(n)) break;
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<int64_t> divisors(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int64_t> primes_up_to(int64_t bound) {
  std::vector<int64_t> out;
  if (bound < 2) return out;
  std::vector<char> sieve(bound + 1, 1);
  for (int64_t p = 2; p <= bound; ++p) {
    if (!sieve[p]) continue;
    out.push_back(p);
    for (int64_t q = p * p; q <= bound; q += p) sieve[q] = 0;
  }
  return out;
}

int64_t euler_phi(int64_t n) {
  if (n < 1) throw DomainError("invalid_argument", "euler_phi requires n >= 1");
  int64_t r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int64_t carmichael_lambda(int64_t n) {
  int64_t r = 1;
  for (auto [p, e] : factorize(n)) {
    int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    int64_t l = pe / p * (p - 1);
    if (p == 2 && e >= 3) l /= 2;
    r = lcm64(r, l);
  }
  return r;
}

int64_t multiplicative_order(int64_t a, int64_t m) {
  if (m == 1) return 1;
  if (gcd64(mod64(a, m), m) != 1) throw DomainError("not_a_unit", "element is not a unit");
  int64_t ord = carmichael_lambda(m);
  for (auto [p, e] : factorize(ord)) {
    (void)e;
    while (ord % p == 0 && powmod64(mod64(a, m), ord / p, m) == 1) ord /= p;
  }
  return ord;
}

int64_t prime_to_part(int64_t n, int64_t p) {
  while (n % p == 0) n /= p;
  return n;
}

bool UnitGroup::is_unit(int64_t x) const { return table_[mod64(x, modulus)] >= 0; }

std::optional<std::vector<int64_t>> UnitGroup::dlog(int64_t x) const {
  int32_t row = table_[mod64(x, modulus)];
  if (row < 0) return std::nullopt;
  return exps_[row];
}

int64_t UnitGroup::element(const std::vector<int64_t>& exps) const {
  int64_t x = 1 % modulus;
  for (size_t j = 0; j < generators.size(); ++j) {
    x = mulmod64(x, powmod64(generators[j], mod64(exps[j], orders[j]), modulus), modulus);
  }
  return x;
}

std::vector<int64_t> UnitGroup::units() const {
  std::vector<int64_t> out;
  for (int64_t x = 0; x < modulus; ++x) {
    if (table_[x] >= 0) out.push_back(x);
  }
  if (modulus == 1) out = {0};
  return out;
}

int64_t UnitGroup::order() const {
  int64_t r = 1;
  for (auto o : orders) r *= o;
  return r;
}

namespace {

int64_t least_primitive_root_prime_power(int64_t p, int e) {
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  int64_t phi = pe / p * (p - 1);
  for (int64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    if (multiplicative_order(g, pe) == phi) return g;
  }
  return 1;  // p = 2
}

UnitGroupPtr build_unit_group(int64_t n) {
  if (n < 1) throw DomainError("invalid_argument", "unit group needs n >= 1");
  auto G = std::make_shared<UnitGroup>();
  G->modulus = n;
  auto lift = [n](int64_t residue, int64_t pe) {
    // x = residue mod pe, x = 1 mod n/pe
    int64_t rest = n / pe;
    int64_t t = mod64((residue - 1) * *invmod64(rest, pe), pe);
    return mod64(1 + rest * t, n);
  };
  for (auto [p, e] : factorize(n)) {
    int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e >= 2) {
        G->generators.push_back(lift(pe - 1, pe));
        G->orders.push_back(2);
      }
      if (e >= 3) {
        G->generators.push_back(lift(5, pe));
        G->orders.push_back(pe / 4);
      }
    } else {
      G->generators.push_back(lift(least_primitive_root_prime_power(p, e), pe));
      G->orders.push_back(pe / p * (p - 1));
    }
  }
  G->table_.assign(n, -1);
  size_t k = G->generators.size();
  std::vector<int64_t> exps(k, 0);
  int64_t x = 1 % n;
  // odometer over all exponent vectors
  while (true) {
    G->table_[x] = static_cast<int32_t>(G->exps_.size());
    G->exps_.push_back(exps);
    size_t j = 0;
    for (; j < k; ++j) {
      if (++exps[j] < G->orders[j]) break;
      exps[j] = 0;
    }
    if (j == k) break;
    x = G->element(exps);
  }
  return G;
}

}  // namespace

UnitGroupPtr unit_group(int64_t n) {
  static std::mutex mu;
  static std::map<int64_t, UnitGroupPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto G = build_unit_group(n);
  cache.emplace(n, G);
  return G;
}

}  // namespace mgr
