#include "dirichlet/character.hpp"

#include <numeric>
#include <sstream>

namespace mgr {

DirichletCharacter DirichletCharacter::trivial(int64_t n) {
  auto G = unit_group(n);
  return DirichletCharacter(n, G, std::vector<int64_t>(G->generators.size(), 0), 1);
}

DirichletCharacter DirichletCharacter::from_exponents(int64_t n, std::vector<int64_t> exps, int64_t m) {
  auto G = unit_group(n);
  if (exps.size() != G->generators.size()) {
    throw DomainError("invalid_character", "expected " + std::to_string(G->generators.size()) + " generator images mod " + std::to_string(n));
  }
  if (m < 1) throw DomainError("invalid_character", "character order must be positive");
  for (size_t j = 0; j < exps.size(); ++j) {
    exps[j] = mod64(exps[j], m);
    if (mod64(exps[j] * G->orders[j], m) != 0) {
      throw DomainError("invalid_character", "image of generator " + std::to_string(G->generators[j]) + " has order not dividing " + std::to_string(G->orders[j]));
    }
  }
  int64_t g = m;
  for (auto e : exps) g = std::gcd(g, e);
  for (auto& e : exps) e /= g;
  return DirichletCharacter(n, G, std::move(exps), m / g);
}

DirichletCharacter DirichletCharacter::parse(const std::string& lit) {
  auto fail = [&lit](const std::string& why) { return DomainError("parse_error", "bad character literal '" + lit + "': " + why); };
  auto to_int = [&](const std::string& s) {
    size_t pos = 0;
    int64_t v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (...) {
      throw fail("expected integer, got '" + s + "'");
    }
    if (pos != s.size()) throw fail("expected integer, got '" + s + "'");
    return v;
  };
  if (lit.rfind("triv:", 0) == 0) {
    int64_t n = to_int(lit.substr(5));
    if (n < 1) throw fail("modulus must be positive");
    return trivial(n);
  }
  auto colon = lit.find(':');
  auto at = lit.rfind('@');
  if (colon == std::string::npos || at == std::string::npos || at < colon) throw fail("expected n:g^e,...@m");
  int64_t n = to_int(lit.substr(0, colon));
  int64_t m = to_int(lit.substr(at + 1));
  if (n < 1 || m < 1) throw fail("modulus and order must be positive");
  auto G = unit_group(n);
  std::vector<int64_t> exps(G->generators.size(), 0);
  std::string body = lit.substr(colon + 1, at - colon - 1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto caret = item.find('^');
    if (caret == std::string::npos) throw fail("expected g^e");
    int64_t g = mod64(to_int(item.substr(0, caret)), n);
    int64_t e = to_int(item.substr(caret + 1));
    size_t j = 0;
    while (j < G->generators.size() && G->generators[j] != g) ++j;
    if (j == G->generators.size()) throw fail(std::to_string(g) + " is not a canonical generator mod " + std::to_string(n));
    exps[j] = e;
  }
  return from_exponents(n, exps, m);
}

std::string DirichletCharacter::literal() const {
  if (is_trivial()) return "triv:" + std::to_string(n_);
  std::ostringstream os;
  os << n_ << ":";
  bool first = true;
  for (size_t j = 0; j < e_.size(); ++j) {
    if (!e_[j]) continue;
    if (!first) os << ",";
    first = false;
    os << G_->generators[j] << "^" << e_[j];
  }
  os << "@" << m_;
  return os.str();
}

std::optional<int64_t> DirichletCharacter::value_exponent(int64_t x) const {
  auto d = G_->dlog(x);
  if (!d) return std::nullopt;
  int64_t t = 0;
  for (size_t j = 0; j < e_.size(); ++j) t = (t + (*d)[j] * e_[j]) % m_;
  return t;
}

bool DirichletCharacter::is_even() const { return *value_exponent(n_ - 1) == 0; }

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
  if (n_ != o.n_) throw DomainError("invalid_argument", "product of characters with different moduli");
  int64_t M = lcm64(m_, o.m_);
  std::vector<int64_t> e(e_.size());
  for (size_t j = 0; j < e.size(); ++j) e[j] = e_[j] * (M / m_) + o.e_[j] * (M / o.m_);
  return from_exponents(n_, e, M);
}

DirichletCharacter DirichletCharacter::pow(int64_t k) const {
  std::vector<int64_t> e(e_.size());
  for (size_t j = 0; j < e.size(); ++j) e[j] = mod64(e_[j] * mod64(k, m_), m_);
  return from_exponents(n_, e, m_);
}

DirichletCharacter make_character(int64_t n, const std::vector<std::pair<int64_t, int64_t>>& images) {
  auto G = unit_group(n);
  if (images.size() != G->generators.size()) {
    throw DomainError("invalid_character", "expected " + std::to_string(G->generators.size()) + " generator images");
  }
  int64_t M = 1;
  for (auto& [e, o] : images) {
    if (o < 1) throw DomainError("invalid_character", "root of unity order must be positive");
    M = lcm64(M, o);
  }
  std::vector<int64_t> exps;
  for (auto& [e, o] : images) exps.push_back(e * (M / o));
  return DirichletCharacter::from_exponents(n, exps, M);
}

DirichletCharacter induce(const DirichletCharacter& chi, int64_t n) {
  if (n < 1 || n % chi.modulus() != 0) {
    throw DomainError("invalid_argument", "cannot induce from " + std::to_string(chi.modulus()) + " to " + std::to_string(n));
  }
  auto G = unit_group(n);
  std::vector<int64_t> e;
  for (auto g : G->generators) e.push_back(*chi.value_exponent(g % chi.modulus()));
  return DirichletCharacter::from_exponents(n, e, chi.order());
}

int64_t conductor(const DirichletCharacter& chi) {
  int64_t n = chi.modulus();
  if (n == 1) return 1;
  for (int64_t d : divisors(n)) {
    bool ok = true;
    for (int64_t x = 1; ok && x < n; x += d) {
      if (std::gcd(x, n) == 1 && *chi.value_exponent(x) != 0) ok = false;
    }
    if (ok) return d;
  }
  return n;
}

std::vector<int64_t> kernel(const DirichletCharacter& chi) {
  std::vector<int64_t> out;
  for (int64_t x : chi.group()->units()) {
    if (*chi.value_exponent(x) == 0) out.push_back(x);
  }
  return out;
}

std::vector<DirichletCharacter> all_characters(int64_t n) {
  auto G = unit_group(n);
  size_t k = G->generators.size();
  std::vector<DirichletCharacter> out;
  std::vector<int64_t> t(k, 0);
  while (true) {
    std::vector<std::pair<int64_t, int64_t>> im;
    for (size_t j = 0; j < k; ++j) im.emplace_back(t[j], G->orders[j]);
    out.push_back(make_character(n, im));
    size_t j = 0;
    for (; j < k; ++j) {
      if (++t[j] < G->orders[j]) break;
      t[j] = 0;
    }
    if (j == k) break;
  }
  return out;
}

PlaceAboveEll PlaceAboveEll::make(uint64_t ell, int64_t max_order) {
  if (!is_prime(ell)) throw DomainError("not_prime", std::to_string(ell) + " is not prime");
  if (max_order < 1 || std::gcd(static_cast<int64_t>(ell), max_order) != 1) {
    throw DomainError("invalid_argument", "place order must be positive and prime to ell");
  }
  PlaceAboveEll P;
  P.ell_ = ell;
  P.M_ = max_order;
  int r = static_cast<int>(multiplicative_order(static_cast<int64_t>(ell % max_order), max_order));
  if (max_order == 1) r = 1;
  P.F_ = FqField::make(ell, r);
  P.zeta_ = P.F_.root_of_unity(static_cast<uint64_t>(max_order));
  return P;
}

PlaceAboveEll PlaceAboveEll::for_modulus(uint64_t ell, int64_t n) {
  return make(ell, prime_to_part(carmichael_lambda(n), static_cast<int64_t>(ell)));
}

FqElem PlaceAboveEll::image(int64_t m, int64_t e) const {
  int64_t ella = 1, mp = m;
  while (mp % static_cast<int64_t>(ell_) == 0) {
    mp /= static_cast<int64_t>(ell_);
    ella *= static_cast<int64_t>(ell_);
  }
  if (M_ % mp != 0) {
    throw DomainError("place_too_small", "place mod " + std::to_string(ell_) + " lacks roots of unity of order " + std::to_string(mp));
  }
  if (mp == 1) return F_.one();
  int64_t s = *invmod64(ella % mp, mp);
  int64_t t = mulmod64(static_cast<uint64_t>(mod64(e, m) % mp), static_cast<uint64_t>(s), static_cast<uint64_t>(mp));
  return F_.pow(zeta_, static_cast<uint64_t>((M_ / mp) * t));
}

ResidualCharacter::ResidualCharacter(int64_t n, FqField F, std::vector<FqElem> gen_values)
    : n_(n), G_(unit_group(n)), F_(std::move(F)), vals_(std::move(gen_values)) {
  if (vals_.size() != G_->generators.size()) throw DomainError("invalid_character", "wrong number of generator values");
  for (size_t j = 0; j < vals_.size(); ++j) {
    if (vals_[j].code == 0 || F_.pow(vals_[j], static_cast<uint64_t>(G_->orders[j])) != F_.one()) {
      throw DomainError("invalid_character", "generator value of wrong order");
    }
  }
}

ResidualCharacter ResidualCharacter::trivial(int64_t n, const FqField& F) {
  return ResidualCharacter(n, F, std::vector<FqElem>(unit_group(n)->generators.size(), F.one()));
}

ResidualCharacter ResidualCharacter::cyclotomic_power(int64_t n, uint64_t ell, int64_t e, const FqField& F) {
  if (n % static_cast<int64_t>(ell) != 0) throw DomainError("invalid_argument", "cyclotomic character needs ell | n");
  auto G = unit_group(n);
  std::vector<FqElem> v;
  for (auto g : G->generators) v.push_back(F.pow(F.from_int(g % static_cast<int64_t>(ell)), Int(static_cast<long>(e))));
  return ResidualCharacter(n, F, v);
}

FqElem ResidualCharacter::value(int64_t x) const {
  auto d = G_->dlog(x);
  if (!d) return F_.zero();
  FqElem r = F_.one();
  for (size_t j = 0; j < vals_.size(); ++j) r = F_.mul(r, F_.pow(vals_[j], static_cast<uint64_t>((*d)[j])));
  return r;
}

std::vector<int64_t> ResidualCharacter::kernel() const {
  std::vector<int64_t> out;
  for (int64_t x : G_->units()) {
    if (value(x) == F_.one()) out.push_back(x);
  }
  return out;
}

bool ResidualCharacter::is_trivial() const {
  for (auto v : vals_) {
    if (v != F_.one()) return false;
  }
  return true;
}

ResidualCharacter ResidualCharacter::induce(int64_t n) const {
  if (n % n_ != 0) throw DomainError("invalid_argument", "cannot induce residual character");
  std::vector<FqElem> v;
  for (auto g : unit_group(n)->generators) v.push_back(value(g % n_));
  return ResidualCharacter(n, F_, v);
}

ResidualCharacter ResidualCharacter::operator*(const ResidualCharacter& o) const {
  if (n_ != o.n_ || F_ != o.F_) throw DomainError("invalid_argument", "incompatible residual characters");
  std::vector<FqElem> v(vals_.size());
  for (size_t j = 0; j < v.size(); ++j) v[j] = F_.mul(vals_[j], o.vals_[j]);
  return ResidualCharacter(n_, F_, v);
}

bool ResidualCharacter::operator==(const ResidualCharacter& o) const {
  return n_ == o.n_ && F_ == o.F_ && vals_ == o.vals_;
}

ResidualCharacter ResidualCharacter::map(const FieldEmbedding& emb) const {
  std::vector<FqElem> v;
  for (auto x : vals_) v.push_back(emb(x));
  return ResidualCharacter(n_, emb.target, v);
}

ResidualCharacter reduce_mod(const DirichletCharacter& chi, const PlaceAboveEll& place) {
  std::vector<FqElem> v;
  for (auto e : chi.exponents()) v.push_back(place.image(chi.order(), e));
  return ResidualCharacter(chi.modulus(), place.field(), v);
}

DirichletCharacter teichmuller_lift(const ResidualCharacter& chi, const PlaceAboveEll& place) {
  const FqField& F = place.field();
  if (chi.field() != F && chi.field().degree() != 1) {
    throw DomainError("invalid_argument", "residual character lives outside the place's field");
  }
  std::vector<int64_t> exps;
  for (auto v : chi.generator_values()) {
    FqElem z = F.one();
    int64_t t = 0;
    while (z != v && t < place.max_order()) {
      z = F.mul(z, place.zeta());
      ++t;
    }
    if (t == place.max_order()) throw DomainError("place_too_small", "residual value outside the place's roots of unity");
    exps.push_back(t);
  }
  return DirichletCharacter::from_exponents(chi.modulus(), exps, place.max_order());
}

}  // namespace mgr
