#include "exactalg/fqpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace mgr {

FqPoly::FqPoly(FqField F, std::vector<FqElem> c) : F_(std::move(F)), c_(std::move(c)) { strip(); }

FqPoly FqPoly::constant(const FqField& F, FqElem c) { return FqPoly(F, {c}); }

FqPoly FqPoly::x(const FqField& F) { return FqPoly(F, {F.zero(), F.one()}); }

FqPoly FqPoly::from_ints(const FqField& F, const std::vector<int64_t>& c) {
  std::vector<FqElem> e;
  for (auto v : c) e.push_back(F.from_int(v));
  return FqPoly(F, e);
}

void FqPoly::strip() {
  while (!c_.empty() && c_.back().code == 0) c_.pop_back();
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  std::vector<FqElem> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_.add((*this)[i], o[i]);
  return FqPoly(F_, r);
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  std::vector<FqElem> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) r[i] = F_.sub((*this)[i], o[i]);
  return FqPoly(F_, r);
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(F_);
  std::vector<FqElem> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].code == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F_.add(r[i + j], F_.mul(c_[i], o.c_[j]));
  }
  return FqPoly(F_, r);
}

FqPoly FqPoly::scale(FqElem s) const {
  std::vector<FqElem> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = F_.mul(c_[i], s);
  return FqPoly(F_, r);
}

bool FqPoly::operator<(const FqPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  return scale(F_.inv(lead()));
}

FqPoly FqPoly::derivative() const {
  std::vector<FqElem> r;
  for (size_t i = 1; i < c_.size(); ++i) r.push_back(F_.mul(c_[i], F_.from_int(static_cast<int64_t>(i % F_.ell()))));
  return FqPoly(F_, r);
}

FqElem FqPoly::eval(FqElem a) const {
  FqElem r = F_.zero();
  for (size_t i = c_.size(); i-- > 0;) r = F_.add(F_.mul(r, a), c_[i]);
  return r;
}

std::string FqPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  bool prime = F_.degree() == 1;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].code == 0) continue;
    std::string coef = F_.to_string(c_[i]);
    if (!first) os << "+";
    first = false;
    bool unit = c_[i] == F_.one();
    if (i == 0) {
      os << (prime ? coef : "(" + coef + ")");
      continue;
    }
    if (!unit) os << (prime ? coef : "(" + coef + ")") << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw DomainError("division_by_zero", "polynomial division by zero");
  const FqField& F = a.field();
  std::vector<FqElem> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {FqPoly(F), a};
  std::vector<FqElem> q(a.degree() - db + 1);
  FqElem inv_lead = F.inv(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    FqElem c = F.mul(r[i], inv_lead);
    q[i - db] = c;
    if (c.code == 0) continue;
    for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.coeffs()[j]));
  }
  r.resize(db);
  return {FqPoly(F, q), FqPoly(F, r)};
}

FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

FqPoly poly_gcd(const FqPoly& a, const FqPoly& b) {
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    FqPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FqPoly mulmod(const FqPoly& a, const FqPoly& b, const FqPoly& m) { return (a * b) % m; }

FqPoly powmod(const FqPoly& base, const Int& e, const FqPoly& m) {
  FqPoly r = FqPoly::constant(m.field(), m.field().one()) % m;
  FqPoly b = base % m;
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    r = mulmod(r, r, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mulmod(r, b, m);
  }
  return r;
}

namespace {

FqPoly pth_root(const FqPoly& f) {
  const FqField& F = f.field();
  uint64_t p = F.ell();
  uint64_t root_exp = F.size() / p;
  std::vector<FqElem> r;
  for (size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(F.pow(f.coeffs()[i], root_exp));
  return FqPoly(F, r);
}

}  // namespace

bool is_irreducible(const FqPoly& f) {
  if (f.degree() < 1) return false;
  auto ddf = distinct_degree_factorization(f.monic());
  auto sqf = poly_gcd(f, f.derivative());
  if (sqf.degree() > 0) return false;
  return ddf.size() == 1 && ddf[0].second == f.degree();
}

std::vector<std::pair<FqPoly, int>> squarefree_factorization(const FqPoly& f0) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly f = f0.monic();
  if (f.degree() < 1) return out;
  const FqField& F = f.field();
  FqPoly c = poly_gcd(f, f.derivative());
  FqPoly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    FqPoly y = poly_gcd(w, c);
    FqPoly fac = divmod(w, y).first;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = y;
    c = divmod(c, y).first;
    ++i;
  }
  if (c.degree() > 0) {
    int p = static_cast<int>(F.ell());
    for (auto& [g, m] : squarefree_factorization(pth_root(c))) out.emplace_back(g, m * p);
  }
  return out;
}

std::vector<std::pair<FqPoly, int>> distinct_degree_factorization(const FqPoly& f) {
  std::vector<std::pair<FqPoly, int>> out;
  const FqField& F = f.field();
  FqPoly rest = f.monic();
  FqPoly X = FqPoly::x(F);
  FqPoly h = X % rest;
  Int q(static_cast<unsigned long>(F.size()));
  int i = 1;
  while (rest.degree() >= 2 * i) {
    h = powmod(h, q, rest);
    FqPoly g = poly_gcd(rest, h - X);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      rest = divmod(rest, g).first;
      h = h % rest;
    }
    ++i;
  }
  if (rest.degree() > 0) out.emplace_back(rest, rest.degree());
  return out;
}

std::vector<FqPoly> equal_degree_factorization(const FqPoly& f, int d, uint64_t seed) {
  std::vector<FqPoly> out;
  std::mt19937_64 rng(seed);
  std::vector<FqPoly> todo{f.monic()};
  const FqField& F = f.field();
  bool even = F.ell() == 2;
  Int qd = 1;
  for (int j = 0; j < d; ++j) qd *= static_cast<unsigned long>(F.size());
  Int half = (qd - 1) / 2;
  while (!todo.empty()) {
    FqPoly g = todo.back();
    todo.pop_back();
    if (g.degree() == d) {
      out.push_back(g);
      continue;
    }
    while (true) {
      std::vector<FqElem> coeffs(g.degree());
      for (auto& c : coeffs) c = {rng() % F.size()};
      FqPoly a(F, coeffs);
      if (a.degree() < 1) continue;
      FqPoly b;
      if (even) {
        int steps = F.degree() * d;
        FqPoly t = a % g, s = t;
        for (int j = 1; j < steps; ++j) {
          t = mulmod(t, t, g);
          s = s + t;
        }
        b = s;
      } else {
        b = powmod(a, half, g) - FqPoly::constant(F, F.one());
      }
      FqPoly h = poly_gcd(g, b);
      if (h.degree() > 0 && h.degree() < g.degree()) {
        todo.push_back(h);
        todo.push_back(divmod(g, h).first.monic());
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PolyFactor> poly_factor_fq(const FqPoly& f) {
  if (f.is_zero()) throw DomainError("zero_polynomial", "cannot factor the zero polynomial");
  std::map<std::vector<FqElem>, std::pair<FqPoly, int>> acc;
  for (auto& [sq, m] : squarefree_factorization(f)) {
    for (auto& [part, d] : distinct_degree_factorization(sq)) {
      for (auto& g : equal_degree_factorization(part, d, 0)) {
        auto it = acc.find(g.coeffs());
        if (it == acc.end()) {
          acc.emplace(g.coeffs(), std::make_pair(g, m));
        } else {
          it->second.second += m;
        }
      }
    }
  }
  std::vector<PolyFactor> out;
  for (auto& [k, v] : acc) out.push_back({v.first, v.second});
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
  return out;
}

std::vector<FqElem> poly_roots(const FqPoly& f) {
  std::vector<FqElem> out;
  if (f.degree() < 1) return out;
  for (auto& pf : poly_factor_fq(f)) {
    if (pf.factor.degree() == 1) out.push_back(f.field().neg(pf.factor.coeffs()[0]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

FqPoly minpoly_prime_field(const FqField& F, FqElem a) {
  std::vector<FqElem> conj{a};
  FqElem b = F.frobenius(a);
  while (b != a) {
    conj.push_back(b);
    b = F.frobenius(b);
  }
  FqPoly prod = FqPoly::constant(F, F.one());
  for (auto c : conj) prod = prod * FqPoly(F, {F.neg(c), F.one()});
  FqField P = FqField::make(F.ell(), 1);
  std::vector<FqElem> coeffs;
  for (auto c : prod.coeffs()) {
    if (!F.in_prime_field(c)) throw DomainError("internal", "minimal polynomial not over prime field");
    coeffs.push_back(c);
  }
  return FqPoly(P, coeffs);
}

std::vector<Int> parse_int_poly(const std::string& s0) {
  std::string s;
  for (char ch : s0) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw DomainError("parse_error", "empty polynomial");
  std::vector<Int> c;
  size_t i = 0;
  auto add = [&c](size_t e, const Int& v) {
    if (c.size() <= e) c.resize(e + 1, 0);
    c[e] += v;
  };
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    Int coef = digits.empty() ? Int(1) : Int(digits);
    if (i < s.size() && s[i] == '*') ++i;
    size_t e = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string ed;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ed += s[i++];
        if (ed.empty()) throw DomainError("parse_error", "bad exponent in polynomial '" + s0 + "'");
        e = std::stoul(ed);
      }
    } else if (digits.empty()) {
      throw DomainError("parse_error", "cannot parse polynomial '" + s0 + "'");
    }
    add(e, sign * coef);
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw DomainError("parse_error", "cannot parse polynomial '" + s0 + "'");
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

std::string int_poly_to_string(const std::vector<Int>& c, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    Int a = abs(c[i]);
    if (c[i] < 0) {
      os << "-";
    } else if (!first) {
      os << "+";
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace mgr
