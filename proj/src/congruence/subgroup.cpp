#include "congruence/subgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace mgr {

namespace {

std::vector<int64_t> closure(int64_t n, const std::vector<int64_t>& gens) {
  std::vector<char> seen(n, 0);
  std::vector<int64_t> out{1 % n};
  seen[1 % n] = 1;
  for (size_t idx = 0; idx < out.size(); ++idx) {
    for (int64_t g : gens) {
      int64_t y = static_cast<int64_t>(mulmod64(static_cast<uint64_t>(out[idx]), static_cast<uint64_t>(mod64(g, n)), static_cast<uint64_t>(n)));
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupH SubgroupH::from_generators(int64_t n, const std::vector<int64_t>& gens) {
  if (n < 1) throw DomainError("invalid_argument", "level must be positive");
  for (int64_t g : gens) {
    if (std::gcd(mod64(g, n), n) != 1 && n > 1) throw DomainError("invalid_subgroup", std::to_string(g) + " is not a unit mod " + std::to_string(n));
  }
  SubgroupH H;
  H.n_ = n;
  H.elems_ = closure(n, gens);
  H.member_.assign(n, 0);
  for (auto x : H.elems_) H.member_[x] = 1;
  return H;
}

SubgroupH SubgroupH::from_elements(int64_t n, std::vector<int64_t> elems) {
  for (auto& x : elems) x = mod64(x, n);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  SubgroupH H = from_generators(n, elems);
  if (H.elems_ != elems) throw DomainError("invalid_subgroup", "elements are not closed under multiplication");
  return H;
}

SubgroupH SubgroupH::full(int64_t n) { return from_generators(n, unit_group(n)->generators); }

SubgroupH SubgroupH::parse(int64_t n, const std::string& spec) {
  if (spec == "full") return full(n);
  if (spec == "trivial" || spec.empty()) return trivial(n);
  if (spec == "pm1") return from_generators(n, {n - 1});
  std::vector<int64_t> gens;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      gens.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("parse_error", "bad subgroup generator '" + item + "'");
    }
  }
  return from_generators(n, gens);
}

bool SubgroupH::is_subgroup_of(const SubgroupH& o) const {
  if (n_ != o.n_) return false;
  return std::all_of(elems_.begin(), elems_.end(), [&o](int64_t x) { return o.contains(x); });
}

std::vector<int64_t> SubgroupH::generators() const {
  std::vector<int64_t> gens;
  std::vector<int64_t> cur{1 % n_};
  for (int64_t x : elems_) {
    if (std::binary_search(cur.begin(), cur.end(), x)) continue;
    gens.push_back(x);
    cur = closure(n_, gens);
  }
  return gens;
}

SubgroupH SubgroupH::project(int64_t m) const {
  if (m < 1 || n_ % m != 0) throw DomainError("invalid_argument", "projection needs a divisor of the level");
  std::vector<int64_t> e;
  for (int64_t x : elems_) e.push_back(x % m);
  return from_generators(m, e);
}

SubgroupH SubgroupH::with_minus_one() const {
  auto g = elems_;
  g.push_back(n_ - 1);
  return from_generators(n_, g);
}

std::string SubgroupH::describe() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < elems_.size(); ++i) os << (i ? "," : "") << elems_[i];
  os << "}";
  return os.str();
}

std::vector<SubgroupH> intermediate_subgroups(int64_t n) {
  if (n < 1 || n > 200) throw DomainError("level_too_large", "subgroup enumeration supports 1 <= n <= 200");
  std::set<std::vector<int64_t>> seen;
  std::vector<SubgroupH> subs;
  auto add = [&](const SubgroupH& H) {
    if (seen.insert(H.elements()).second) subs.push_back(H);
  };
  for (int64_t x : unit_group(n)->units()) add(SubgroupH::from_generators(n, {x}));
  for (size_t i = 0; i < subs.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      auto gens = subs[i].generators();
      auto gj = subs[j].generators();
      gens.insert(gens.end(), gj.begin(), gj.end());
      add(SubgroupH::from_generators(n, gens));
    }
  }
  std::sort(subs.begin(), subs.end(), [](const SubgroupH& a, const SubgroupH& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return subs;
}

SubgroupH h_from_eigenform(const DirichletCharacter& eps, int k, int i, uint64_t ell, const PlaceAboveEll& place) {
  int64_t N = eps.modulus();
  int64_t L = static_cast<int64_t>(ell);
  if (N % L == 0) throw DomainError("ell_divides_level", "ell must not divide the level");
  if (i < 0 || i > L - 1) throw DomainError("invalid_argument", "twist exponent must lie in [0, ell-1]");
  if (k < 2) throw DomainError("invalid_argument", "weight must be at least 2");
  int64_t Np = k > 2 ? N * L : N;
  ResidualCharacter psi = reduce_mod(eps, place).induce(Np);
  if (k > 2) psi = psi * ResidualCharacter::cyclotomic_power(Np, ell, k - 2 - 2 * i, place.field());
  return SubgroupH::from_elements(Np, psi.kernel());
}

int64_t predicted_kernel_order(int64_t m, uint64_t ell, int64_t e) {
  int64_t L = static_cast<int64_t>(ell);
  if (!is_prime(ell) || m % L != 0) throw DomainError("invalid_argument", "predicted kernel order needs prime ell dividing m");
  return euler_phi(m) * std::gcd(L - 1, std::abs(e)) / (L - 1);
}

int64_t index_gamma(const SubgroupH& H) { return H.size(); }

bool gamma0_criterion(uint64_t ell, int k, int i) {
  int64_t e = k - 2 - 2 * static_cast<int64_t>(i);
  return mod64(e, static_cast<int64_t>(ell) - 1) == 0;
}

int CosetTable::index_of(int64_t c, int64_t d) const { return class_of_[mod64(c, level) * level + mod64(d, level)]; }

CosetTable coset_table(const SubgroupH& H) {
  CosetTable T;
  int64_t n = H.level();
  T.level = n;
  SubgroupH pm = H.with_minus_one();
  T.class_of_.assign(n * n, -1);
  for (int64_t c = 0; c < n; ++c) {
    for (int64_t d = 0; d < n; ++d) {
      if (std::gcd(std::gcd(c, d), n) != 1 && n > 1) continue;
      if (T.class_of_[c * n + d] >= 0) continue;
      int idx = static_cast<int>(T.cosets.size());
      T.cosets.emplace_back(c, d);
      for (int64_t h : pm.elements()) T.class_of_[(h * c % n) * n + (h * d % n)] = idx;
    }
  }
  for (auto [c, d] : T.cosets) {
    T.s_perm.push_back(T.index_of(d, -c));
    T.t_perm.push_back(T.index_of(c, c + d));
  }
  return T;
}

CurveInvariants curve_invariants(const CosetTable& t) {
  CurveInvariants inv;
  int mu = static_cast<int>(t.cosets.size());
  inv.index = mu;
  inv.e2 = 0;
  inv.e3 = 0;
  for (int i = 0; i < mu; ++i) {
    if (t.s_perm[i] == i) ++inv.e2;
    if (t.t_perm[t.s_perm[i]] == i) ++inv.e3;
  }
  std::vector<char> seen(mu, 0);
  inv.cusps = 0;
  for (int i = 0; i < mu; ++i) {
    if (seen[i]) continue;
    ++inv.cusps;
    for (int j = i; !seen[j]; j = t.t_perm[j]) seen[j] = 1;
  }
  int64_t twelve_g = 12 + mu - 3 * inv.e2 - 4 * inv.e3 - 6 * inv.cusps;
  if (twelve_g % 12 != 0 || twelve_g < 0) throw DomainError("internal", "genus formula is not integral");
  inv.genus = twelve_g / 12;
  return inv;
}

int64_t genus(const SubgroupH& H) { return curve_invariants(coset_table(H)).genus; }

}  // namespace mgr
