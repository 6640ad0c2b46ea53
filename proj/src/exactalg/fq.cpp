#include "exactalg/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace mgr {

struct FqField::Impl {
  uint64_t ell = 0;
  int r = 1;
  uint64_t q = 0;
  std::vector<uint64_t> modulus;
  std::vector<uint64_t> pow_ell;
  FqElem primitive;
  // log/antilog tables for small extension fields
  std::vector<uint32_t> log;
  std::vector<uint64_t> exp;
  std::vector<uint64_t> order_primes;  // primes dividing q - 1

  // Fields with q >= 2^62: codes below ell are prime-field elements, larger
  // codes index interned coefficient vectors.  No tables, no primitive element.
  bool big = false;
  Int big_q;
  mutable std::mutex intern_mu;
  mutable std::map<std::vector<uint64_t>, uint64_t> intern;
  mutable std::vector<std::vector<uint64_t>> interned;
};

namespace {

using Poly = std::vector<uint64_t>;

void strip(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, uint64_t ell) {
  strip(a);
  size_t df = f.size() - 1;
  uint64_t inv_lead = static_cast<uint64_t>(*invmod64(static_cast<int64_t>(f.back()), static_cast<int64_t>(ell)));
  while (a.size() > df) {
    uint64_t c = mulmod64(a.back(), inv_lead, ell);
    size_t shift = a.size() - 1 - df;
    for (size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + ell - mulmod64(c, f[i], ell)) % ell;
    }
    strip(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t ell) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mulmod64(a[i], b[j], ell)) % ell;
  }
  return poly_mod(std::move(c), f, ell);
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint64_t ell) {
  Poly r{1};
  base = poly_mod(base, f, ell);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, ell);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, f, ell);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, uint64_t ell) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, ell);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly sub_x(Poly h, uint64_t ell) {
  if (h.size() < 2) h.resize(2, 0);
  h[1] = (h[1] + ell - 1) % ell;
  strip(h);
  return h;
}

bool rabin_irreducible(const Poly& f, uint64_t ell) {
  int r = static_cast<int>(f.size()) - 1;
  if (r == 1) return true;
  if (f[0] == 0) return false;
  std::vector<Poly> frob(r + 1);  // frob[i] = x^{ell^i} mod f
  frob[0] = poly_mod({0, 1}, f, ell);
  for (int i = 1; i <= r; ++i) frob[i] = poly_powmod(frob[i - 1], ell, f, ell);
  if (!sub_x(frob[r], ell).empty()) return false;
  for (auto [p, e] : factorize(r)) {
    (void)e;
    Poly g = poly_gcd(f, sub_x(frob[r / p], ell), ell);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace

std::vector<uint64_t> canonical_modulus(uint64_t ell, int degree) {
  if (degree == 1) return {0, 1};
  // Candidates in the order of the integer with digits c0 c1 ... c_{r-1};
  // c0 = 0 never gives an irreducible, so start at c0 = 1.
  Poly f(degree + 1, 0);
  f[degree] = 1;
  f[0] = 1;
  while (true) {
    if (rabin_irreducible(f, ell)) return f;
    int i = degree - 1;
    while (i >= 0 && ++f[i] == ell) f[i--] = 0;
    if (i < 0) break;
  }
  throw DomainError("internal", "no irreducible polynomial found");
}

namespace {

// Arithmetic used while the tables are being set up.
uint64_t slow_mul(const FqField::Impl& d, uint64_t a, uint64_t b) {
  if (d.r == 1) return mulmod64(a, b, d.ell);
  uint64_t ad[64], bd[64], prod[128] = {0};
  for (int i = 0; i < d.r; ++i) {
    ad[i] = a % d.ell;
    a /= d.ell;
    bd[i] = b % d.ell;
    b /= d.ell;
  }
  for (int i = 0; i < d.r; ++i) {
    if (!ad[i]) continue;
    for (int j = 0; j < d.r; ++j) prod[i + j] = (prod[i + j] + ad[i] * bd[j]) % d.ell;
  }
  for (int j = 2 * d.r - 2; j >= d.r; --j) {
    uint64_t c = prod[j];
    if (!c) continue;
    for (int t = 0; t < d.r; ++t) {
      prod[j - d.r + t] = (prod[j - d.r + t] + d.ell - c * d.modulus[t] % d.ell) % d.ell;
    }
  }
  uint64_t code = 0;
  for (int i = d.r - 1; i >= 0; --i) code = code * d.ell + prod[i];
  return code;
}

uint64_t slow_pow(const FqField::Impl& d, uint64_t a, uint64_t e) {
  uint64_t r = 1;
  while (e) {
    if (e & 1) r = slow_mul(d, r, a);
    e >>= 1;
    if (e) a = slow_mul(d, a, a);
  }
  return r;
}

constexpr uint64_t kTableLimit = 1u << 20;
constexpr int kBigDegreeLimit = 64;

Poly big_decode(const FqField::Impl& d, uint64_t code) {
  if (code < d.ell) {
    Poly c(d.r, 0);
    c[0] = code;
    return c;
  }
  std::lock_guard<std::mutex> lock(d.intern_mu);
  return d.interned.at(code - d.ell);
}

uint64_t big_encode(const FqField::Impl& d, Poly c) {
  c.resize(d.r, 0);
  if (std::all_of(c.begin() + 1, c.end(), [](uint64_t x) { return x == 0; })) return c[0];
  std::lock_guard<std::mutex> lock(d.intern_mu);
  auto [it, fresh] = d.intern.emplace(c, d.ell + d.interned.size());
  if (fresh) d.interned.push_back(std::move(c));
  return it->second;
}

uint64_t big_mul(const FqField::Impl& d, uint64_t a, uint64_t b) {
  return big_encode(d, poly_mulmod(big_decode(d, a), big_decode(d, b), d.modulus, d.ell));
}

uint64_t big_pow(const FqField::Impl& d, uint64_t a, Int e) {
  e %= d.big_q - 1;
  Poly base = big_decode(d, a), r{1};
  for (size_t bit = mpz_sizeinbase(e.get_mpz_t(), 2) + 1; bit-- > 0;) {
    r = poly_mulmod(r, r, d.modulus, d.ell);
    if (mpz_tstbit(e.get_mpz_t(), bit)) r = poly_mulmod(r, base, d.modulus, d.ell);
  }
  return big_encode(d, r);
}

void require_small(const FqField::Impl& d, const char* what) {
  if (d.big) throw DomainError("field_too_large", std::string(what) + " needs a field with fewer than 2^62 elements");
}

std::shared_ptr<FqField::Impl> build_field(uint64_t ell, int r) {
  if (!is_prime(ell)) throw DomainError("not_prime", "field characteristic " + std::to_string(ell) + " is not prime");
  if (r < 1) throw DomainError("invalid_argument", "field degree must be positive");
  auto d = std::make_shared<FqField::Impl>();
  d->ell = ell;
  d->r = r;
  if (r > 1 && ell >= (1ULL << 31)) throw DomainError("field_too_large", "extension of a field with ell >= 2^31");
  unsigned __int128 q = 1;
  for (int i = 0; i < r && !d->big; ++i) {
    d->pow_ell.push_back(static_cast<uint64_t>(q));
    q *= ell;
    if (q >= (static_cast<unsigned __int128>(1) << 62)) d->big = true;
  }
  if (d->big) {
    if (r > kBigDegreeLimit) throw DomainError("field_too_large", "extension degree " + std::to_string(r) + " is too large");
    mpz_ui_pow_ui(d->big_q.get_mpz_t(), ell, static_cast<unsigned long>(r));
    d->modulus = canonical_modulus(ell, r);
    return d;
  }
  d->q = static_cast<uint64_t>(q);
  d->modulus = canonical_modulus(ell, r);
  for (auto [p, e] : factorize(d->q - 1)) {
    (void)e;
    d->order_primes.push_back(p);
  }
  for (uint64_t c = 1; c < d->q; ++c) {
    bool prim = true;
    for (uint64_t p : d->order_primes) {
      if (slow_pow(*d, c, (d->q - 1) / p) == 1) {
        prim = false;
        break;
      }
    }
    if (prim) {
      d->primitive = {c};
      break;
    }
  }
  if (r > 1 && d->q <= kTableLimit) {
    d->log.assign(d->q, 0);
    d->exp.assign(d->q - 1, 0);
    uint64_t x = 1;
    for (uint64_t i = 0; i + 1 < d->q; ++i) {
      d->exp[i] = x;
      d->log[x] = static_cast<uint32_t>(i);
      x = slow_mul(*d, x, d->primitive.code);
    }
  }
  return d;
}

}  // namespace

FqField FqField::make(uint64_t ell, int degree) {
  static std::mutex mu;
  static std::map<std::pair<uint64_t, int>, std::shared_ptr<const Impl>> cache;
  std::lock_guard<std::mutex> lock(mu);
  FqField F;
  auto key = std::make_pair(ell, degree);
  auto it = cache.find(key);
  if (it != cache.end()) {
    F.impl_ = it->second;
    return F;
  }
  F.impl_ = build_field(ell, degree);
  cache.emplace(key, F.impl_);
  return F;
}

uint64_t FqField::ell() const { return impl_->ell; }
int FqField::degree() const { return impl_->r; }
uint64_t FqField::size() const {
  require_small(*impl_, "field size");
  return impl_->q;
}
const std::vector<uint64_t>& FqField::modulus() const { return impl_->modulus; }

bool FqField::operator==(const FqField& o) const {
  if (!impl_ || !o.impl_) return impl_ == o.impl_;
  return impl_->ell == o.impl_->ell && impl_->r == o.impl_->r;
}

FqElem FqField::from_int(int64_t v) const { return {static_cast<uint64_t>(mod64(v, static_cast<int64_t>(impl_->ell)))}; }

FqElem FqField::from_mpz(const Int& v) const {
  Int m = v % Int(static_cast<unsigned long>(impl_->ell));
  if (m < 0) m += static_cast<unsigned long>(impl_->ell);
  return {m.get_ui()};
}

FqElem FqField::from_rat(const Rat& v) const {
  FqElem den = from_mpz(v.get_den());
  if (den.code == 0) throw DomainError("non_integral", "denominator divisible by " + std::to_string(impl_->ell));
  return div(from_mpz(v.get_num()), den);
}

FqElem FqField::from_coeffs(const std::vector<uint64_t>& c) const {
  std::vector<uint64_t> red(impl_->r, 0);
  uint64_t ell = impl_->ell;
  // reduce modulo the defining polynomial if too long
  std::vector<uint64_t> work(c.begin(), c.end());
  for (auto& x : work) x %= ell;
  for (int j = static_cast<int>(work.size()) - 1; j >= impl_->r; --j) {
    uint64_t top = work[j];
    if (!top) continue;
    for (int t = 0; t < impl_->r; ++t) {
      work[j - impl_->r + t] = (work[j - impl_->r + t] + ell - mulmod64(top, impl_->modulus[t], ell)) % ell;
    }
    work[j] = 0;
  }
  if (impl_->big) {
    work.resize(impl_->r);
    return {big_encode(*impl_, work)};
  }
  uint64_t code = 0;
  for (int i = impl_->r - 1; i >= 0; --i) code = code * ell + (i < static_cast<int>(work.size()) ? work[i] : 0);
  return {code};
}

std::vector<uint64_t> FqField::coeffs(FqElem a) const {
  if (impl_->big) return big_decode(*impl_, a.code);
  std::vector<uint64_t> c(impl_->r);
  uint64_t x = a.code;
  for (int i = 0; i < impl_->r; ++i) {
    c[i] = x % impl_->ell;
    x /= impl_->ell;
  }
  return c;
}

FqElem FqField::gen() const {
  if (impl_->r == 1) return {0};  // modulus x: the generator is the root 0
  if (impl_->big) return {big_encode(*impl_, {0, 1})};
  return {impl_->ell};
}

FqElem FqField::add(FqElem a, FqElem b) const {
  const uint64_t ell = impl_->ell;
  if (impl_->r == 1) {
    uint64_t s = a.code + b.code;
    return {s >= ell ? s - ell : s};
  }
  if (impl_->big) {
    Poly x = big_decode(*impl_, a.code), y = big_decode(*impl_, b.code);
    for (int i = 0; i < impl_->r; ++i) x[i] = (x[i] + y[i]) % ell;
    return {big_encode(*impl_, x)};
  }
  uint64_t x = a.code, y = b.code, out = 0;
  for (int i = 0; i < impl_->r; ++i) {
    uint64_t s = x % ell + y % ell;
    if (s >= ell) s -= ell;
    out += s * impl_->pow_ell[i];
    x /= ell;
    y /= ell;
  }
  return {out};
}

FqElem FqField::neg(FqElem a) const {
  const uint64_t ell = impl_->ell;
  if (impl_->r == 1) return {a.code ? ell - a.code : 0};
  if (impl_->big) {
    Poly x = big_decode(*impl_, a.code);
    for (auto& c : x) c = c ? ell - c : 0;
    return {big_encode(*impl_, x)};
  }
  uint64_t x = a.code, out = 0;
  for (int i = 0; i < impl_->r; ++i) {
    uint64_t s = x % ell;
    out += (s ? ell - s : 0) * impl_->pow_ell[i];
    x /= ell;
  }
  return {out};
}

FqElem FqField::sub(FqElem a, FqElem b) const {
  if (impl_->r == 1) {
    return {a.code >= b.code ? a.code - b.code : a.code + impl_->ell - b.code};
  }
  return add(a, neg(b));
}

FqElem FqField::mul(FqElem a, FqElem b) const {
  if (impl_->r == 1) return {mulmod64(a.code, b.code, impl_->ell)};
  if (a.code == 0 || b.code == 0) return {0};
  if (impl_->big) return {big_mul(*impl_, a.code, b.code)};
  if (!impl_->log.empty()) {
    uint64_t s = static_cast<uint64_t>(impl_->log[a.code]) + impl_->log[b.code];
    if (s >= impl_->q - 1) s -= impl_->q - 1;
    return {impl_->exp[s]};
  }
  return {slow_mul(*impl_, a.code, b.code)};
}

FqElem FqField::inv(FqElem a) const {
  if (a.code == 0) throw DomainError("division_by_zero", "inverse of zero in finite field");
  if (impl_->r == 1) return {static_cast<uint64_t>(*invmod64(static_cast<int64_t>(a.code), static_cast<int64_t>(impl_->ell)))};
  if (impl_->big) return {big_pow(*impl_, a.code, impl_->big_q - 2)};
  if (!impl_->log.empty()) {
    uint64_t l = impl_->log[a.code];
    return {impl_->exp[l == 0 ? 0 : impl_->q - 1 - l]};
  }
  return pow(a, impl_->q - 2);
}

FqElem FqField::pow(FqElem a, uint64_t e) const {
  if (impl_->r == 1) return {powmod64(a.code, e, impl_->ell)};
  if (impl_->big) return e == 0 ? one() : a.code == 0 ? zero() : FqElem{big_pow(*impl_, a.code, Int(static_cast<unsigned long>(e)))};
  if (!impl_->log.empty()) {
    if (e == 0) return {1};
    if (a.code == 0) return {0};
    uint64_t l = mulmod64(impl_->log[a.code], e % (impl_->q - 1), impl_->q - 1);
    return {impl_->exp[l]};
  }
  return {slow_pow(*impl_, a.code, e)};
}

FqElem FqField::pow(FqElem a, const Int& e) const {
  if (e < 0) return pow(inv(a), Int(-e));
  if (a.code == 0) return e == 0 ? one() : zero();
  if (impl_->big) return e == 0 ? one() : FqElem{big_pow(*impl_, a.code, e)};
  Int r = e % Int(static_cast<unsigned long>(impl_->q - 1));
  return pow(a, r.get_ui());
}

uint64_t FqField::order(FqElem a) const {
  if (a.code == 0) throw DomainError("invalid_argument", "zero has no multiplicative order");
  require_small(*impl_, "element order");
  uint64_t ord = impl_->q - 1;
  for (uint64_t p : impl_->order_primes) {
    while (ord % p == 0 && pow(a, ord / p) == one()) ord /= p;
  }
  return ord;
}

FqElem FqField::primitive_element() const {
  require_small(*impl_, "primitive element");
  return impl_->primitive;
}

FqElem FqField::root_of_unity(uint64_t m) const {
  if (m == 0) throw DomainError("invalid_argument", "root of unity of order 0");
  if (!impl_->big) {
    if ((impl_->q - 1) % m != 0) throw DomainError("invalid_argument", "no roots of unity of order " + std::to_string(m));
    return pow(primitive_element(), (impl_->q - 1) / m);
  }
  Int qm1 = impl_->big_q - 1;
  if (!mpz_divisible_ui_p(qm1.get_mpz_t(), m)) throw DomainError("invalid_argument", "no roots of unity of order " + std::to_string(m));
  Int cofactor = qm1 / static_cast<unsigned long>(m);
  auto primes = factorize(m);
  // candidates t + c, t^2 + c, ... in a fixed order
  for (int deg = 1; deg < impl_->r; ++deg) {
    for (uint64_t c = 0; c < impl_->ell; ++c) {
      std::vector<uint64_t> v(deg + 1, 0);
      v[0] = c;
      v[deg] = 1;
      FqElem z = pow(from_coeffs(v), cofactor);
      bool exact = z.code != 0;
      for (auto [p, e] : primes) {
        (void)e;
        if (exact && pow(z, m / static_cast<uint64_t>(p)) == one()) exact = false;
      }
      if (exact) return z;
    }
  }
  throw DomainError("internal", "no root of unity of order " + std::to_string(m) + " found");
}

std::string FqField::to_string(FqElem a) const {
  if (impl_->r == 1) return std::to_string(a.code);
  auto c = coeffs(a);
  std::ostringstream os;
  bool first = true;
  for (int i = impl_->r - 1; i >= 0; --i) {
    if (!c[i]) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c[i];
      continue;
    }
    if (c[i] != 1) os << c[i] << "*";
    os << "t";
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

int64_t FqField::signed_value(FqElem a) const {
  int64_t v = static_cast<int64_t>(a.code);
  int64_t ell = static_cast<int64_t>(impl_->ell);
  return v > ell / 2 ? v - ell : v;
}

}  // namespace mgr
