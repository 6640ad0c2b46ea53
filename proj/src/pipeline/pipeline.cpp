#include "pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mgr {

namespace {

int64_t effective_bound(int64_t b, std::optional<int64_t> truncate) { return truncate ? std::min(b, *truncate) : b; }

void require_coefficients(const InputForm& f, int64_t bound) {
  if (f.bound < bound) {
    throw DomainError("insufficient_coefficients",
                      "input form carries a_p up to " + std::to_string(f.bound) + " but " + std::to_string(bound) + " is needed");
  }
}

bool diamonds_trivial(const Eigensystem& s) {
  return std::all_of(s.diamond.begin(), s.diamond.end(), [&](const auto& kv) { return kv.second == s.field.one(); });
}

// Is the system's nebentypus the reduction of eps at some embedding?
bool has_character(const Eigensystem& s, const ResidualCharacter& eps) {
  int r = std::lcm(s.field.degree(), eps.field().degree());
  FqField C = FqField::make(s.ell(), r);
  FieldEmbedding ee = canonical_embedding(eps.field(), C);
  for (const auto& es : all_embeddings(s.field, C)) {
    bool ok = true;
    for (int64_t d : unit_group(s.level)->units()) {
      if (es(s.diamond_value(d)) != ee(eps.value(d))) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

SpacePtr Workspace::space(const SubgroupH& H, int weight) {
  auto key = std::make_tuple(H.level(), H.elements(), weight);
  auto it = spaces_.find(key);
  if (it != spaces_.end()) return it->second;
  auto s = ModularSymbols::build(H, weight, opts_);
  spaces_.emplace(key, s);
  return s;
}

std::vector<SpacePtr> Workspace::spaces() const {
  std::vector<SpacePtr> out;
  for (const auto& [key, sp] : spaces_) out.push_back(sp);
  return out;
}

int64_t index_gamma1(int64_t n) {
  int64_t idx = n * n;
  for (auto [p, e] : factorize(n)) idx = idx / static_cast<int64_t>(p * p) * static_cast<int64_t>(p * p - 1);
  return idx;
}

int64_t sturm_bound(int64_t level, uint64_t ell, int k, int k2) {
  if (level < 1 || ell < 2 || k < 1 || k2 < 1) throw DomainError("invalid_argument", "bound inputs must be positive");
  int64_t L = static_cast<int64_t>(ell);
  return index_gamma1(level) * (L * L - 1 + std::max(k, k2)) / 12;
}

std::vector<std::pair<int64_t, Int>> read_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("io_error", "cannot read form file " + path);
  std::vector<std::pair<int64_t, Int>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string ps, as;
    if (!(ls >> ps)) continue;
    if (!(ls >> as)) throw DomainError("parse_error", path + ":" + std::to_string(lineno) + ": expected 'p a_p'");
    try {
      int64_t p = std::stoll(ps);
      if (!is_prime(p)) throw DomainError("parse_error", path + ":" + std::to_string(lineno) + ": " + ps + " is not prime");
      out.emplace_back(p, Int(as));
    } catch (const std::invalid_argument&) {
      throw DomainError("parse_error", path + ":" + std::to_string(lineno) + ": not an integer");
    }
  }
  return out;
}

int64_t residual_conductor(const Eigensystem& s) {
  for (int64_t d : divisors(s.level)) {
    bool ok = true;
    for (int64_t x = 1 + d; x < s.level && ok; x += d) {
      if (std::gcd(x, s.level) == 1 && s.diamond_value(x) != s.field.one()) ok = false;
    }
    if (ok) return d;
  }
  return s.level;
}

InputForm select_input_form(Workspace& ws, int64_t level, int weight, uint64_t ell, const FormSelector& sel, int64_t bound) {
  if (level < 1) throw DomainError("invalid_argument", "level must be positive");
  if (!is_prime(ell) || ell < 5) throw DomainError("invalid_argument", "ell must be a prime >= 5");
  if (level % static_cast<int64_t>(ell) == 0) throw DomainError("ell_divides_level", "ell must not divide the level");
  if (weight < 2) throw DomainError("invalid_argument", "weight must be at least 2");
  InputForm f;
  f.level = level;
  f.weight = weight;
  f.ell = ell;
  f.selector = sel;
  std::optional<ResidualCharacter> eps_bar;
  if (sel.character) {
    DirichletCharacter eps = DirichletCharacter::parse(*sel.character);
    if (level % eps.modulus() != 0) throw DomainError("invalid_argument", "character modulus must divide the level");
    eps = induce(eps, level);
    f.character = eps;
    eps_bar = reduce_mod(eps, PlaceAboveEll::for_modulus(ell, level));
  }
  int64_t top = bound;
  for (const auto& [p, a] : sel.coefficients) top = std::max(top, p);
  std::vector<std::pair<int64_t, std::vector<Int>>> relations;
  for (const auto& [p, poly] : sel.relations) {
    relations.emplace_back(p, parse_int_poly(poly));
    top = std::max(top, p);
  }
  f.bound = top;

  ReducedSpace R(plus_cuspidal(ws.space(SubgroupH::trivial(level), weight)), ell);
  auto systems = decompose_space(R, primes_up_to(top), true);
  std::vector<Eigensystem> hits;
  for (auto& s : systems) {
    if (eps_bar && !has_character(s, *eps_bar)) continue;
    bool ok = true;
    for (const auto& [p, a] : sel.coefficients) {
      if (!s.ap.count(p) || s.ap.at(p) != s.field.from_mpz(a)) {
        ok = false;
        break;
      }
    }
    for (const auto& [p, c] : relations) {
      if (!ok) break;
      if (!s.ap.count(p)) {
        ok = false;
        break;
      }
      FqElem v = s.field.zero();
      for (size_t j = c.size(); j-- > 0;) v = s.field.add(s.field.mul(v, s.ap.at(p)), s.field.from_mpz(c[j]));
      ok = v == s.field.zero();
    }
    if (ok) hits.push_back(std::move(s));
  }
  f.candidates = static_cast<int>(hits.size());
  if (sel.index) {
    if (*sel.index < 0 || *sel.index >= static_cast<int>(hits.size())) {
      throw DomainError("no_matching_form", "selector index " + std::to_string(*sel.index) + " out of range: " + std::to_string(hits.size()) + " candidates");
    }
    f.system = hits[*sel.index];
  } else {
    if (hits.empty()) throw DomainError("no_matching_form", "no eigensystem satisfies the selector");
    if (hits.size() > 1) throw DomainError("ambiguous_selector", std::to_string(hits.size()) + " eigensystems satisfy the selector");
    f.system = hits[0];
  }
  f.conductor = f.character ? conductor(*f.character) : residual_conductor(f.system);
  return f;
}

TwistResult find_twist(Workspace& ws, const InputForm& f, std::optional<int64_t> truncate) {
  const uint64_t ell = f.ell;
  const int64_t L = static_cast<int64_t>(ell);
  const int k = f.weight;
  std::vector<int64_t> levels;
  for (int64_t d : divisors(f.level))
    if (d % f.conductor == 0) levels.push_back(d);

  std::vector<std::pair<int64_t, int>> order;  // (i, k')
  bool shortcut = L >= k - 1;
  if (shortcut) {
    order.emplace_back(0, k);
  } else {
    for (int64_t i = 0; i < L; ++i)
      for (int k2 = 2; k2 <= L + 1; ++k2)
        if (mod64(k - k2 - 2 * i, L - 1) == 0) order.emplace_back(i, k2);
  }

  std::map<std::tuple<int64_t, int, int64_t>, std::vector<Eigensystem>> seen;
  for (auto [i, k2] : order) {
    int64_t B = sturm_bound(f.level, ell, k, k2);
    int64_t Be = effective_bound(B, truncate);
    require_coefficients(f, Be);
    for (int64_t M : levels) {
      auto key = std::make_tuple(M, k2, Be);
      if (!seen.count(key)) {
        ReducedSpace R(plus_cuspidal(ws.space(SubgroupH::trivial(M), k2)), ell);
        seen[key] = R.dimension() == 0 ? std::vector<Eigensystem>{} : decompose_space(R, primes_up_to(Be));
      }
      for (const auto& g : seen[key]) {
        MatchReport rep = match_twist(f.system, g, i, Be);
        if (!rep.verdict) continue;
        TwistResult t;
        t.i = i;
        t.weight = k2;
        t.level = M;
        t.g = g;
        t.match = rep;
        t.bound = Be;
        t.truncated = Be < B;
        t.shortcut = shortcut;
        return t;
      }
    }
  }
  throw DomainError("no_twist_found", "no (i, k', M) admits a match; the representation may be reducible or the bound too small");
}

int64_t realize_coefficient_bound(int64_t level, int weight, uint64_t ell, std::optional<int64_t> truncate) {
  int64_t L = static_cast<int64_t>(ell);
  int64_t b = weight == 2 ? sturm_bound(level, ell, 2, 2) : std::max(sturm_bound(level, ell, weight, L + 1), sturm_bound(level * L, ell, weight, 2));
  return effective_bound(b, truncate);
}

SubgroupH h_from_system(const Eigensystem& f, int64_t level_prime, int64_t i) {
  const FqField& F = f.field;
  const int64_t L = static_cast<int64_t>(f.ell());
  int64_t e = mod64(f.weight - 2 - 2 * i, L - 1);
  if (level_prime % f.level != 0) throw DomainError("invalid_argument", "level must divide N'");
  if (e != 0 && level_prime % L != 0) throw DomainError("invalid_argument", "cyclotomic factor needs ell | N'");
  std::vector<int64_t> elems;
  for (int64_t x = 1; x <= level_prime; ++x) {
    int64_t xr = x % level_prime;
    if (std::gcd(xr, level_prime) != 1) continue;
    FqElem v = F.mul(f.diamond_value(xr), F.pow(F.from_int(xr % L), static_cast<uint64_t>(e)));
    if (v == F.one()) elems.push_back(xr);
  }
  return SubgroupH::from_elements(level_prime, elems);
}

RealizationReport realize(Workspace& ws, const InputForm& f, std::optional<int64_t> truncate) {
  RealizationReport rep;
  const uint64_t ell = f.ell;
  const int64_t L = static_cast<int64_t>(ell);
  const int k = f.weight;
  int64_t Mprime;
  if (k == 2) {
    rep.i = 0;
    rep.twist_level = f.level;
    rep.level_prime = f.level;
    Mprime = f.level;
  } else {
    rep.twist = find_twist(ws, f, truncate);
    rep.i = rep.twist->i;
    rep.twist_level = rep.twist->level;
    rep.level_prime = f.level * L;
    Mprime = rep.twist_level * L;
    rep.heuristic = rep.twist->truncated;
  }
  const int64_t Np = rep.level_prime;
  const int64_t e = k - 2 - 2 * rep.i;

  rep.H = h_from_system(f.system, Np, rep.i);
  rep.index = index_gamma(rep.H);
  bool trivial_eps = diamonds_trivial(f.system);
  if (trivial_eps && k > 2) rep.predicted_index = predicted_kernel_order(Np, ell, e);
  rep.gamma0 = rep.H.size() == euler_phi(Np);
  if (trivial_eps) rep.gamma0_predicted = gamma0_criterion(ell, k, static_cast<int>(rep.i));
  rep.d1 = genus(SubgroupH::trivial(Np));
  rep.dH = genus(rep.H);

  auto invariant_space = [&](int64_t m) { return h_invariant_subspace(plus_cuspidal(ws.space(SubgroupH::trivial(m), 2)), rep.H.project(m)); };
  rep.invariant_dimension = invariant_space(Np).dimension();

  bool found = false;
  for (int64_t m : divisors(Mprime)) {
    LevelAttempt at;
    at.level = m;
    Subspace sub = invariant_space(m);
    at.dimension = sub.dimension();
    if (at.dimension > 0) {
      int64_t B = sturm_bound(m, ell, k, 2);
      int64_t Be = effective_bound(B, truncate);
      require_coefficients(f, Be);
      at.bound = Be;
      ReducedSpace R(sub, ell);
      auto systems = decompose_space(R, primes_up_to(Be), true);
      at.systems = static_cast<int>(systems.size());
      for (const auto& g : systems) {
        MatchReport mr = match_twist(f.system, g, rep.i, Be);
        if (!mr.verdict) continue;
        at.matched = true;
        found = true;
        rep.f2 = g;
        rep.f2_level = m;
        rep.match = mr;
        rep.heuristic = rep.heuristic || Be < B;
        break;
      }
    }
    rep.attempts.push_back(at);
    if (found) break;
  }
  if (!found) {
    std::ostringstream os;
    os << "no weight-2 eigensystem matches at any divisor of " << Mprime << ":";
    for (const auto& a : rep.attempts) os << " level " << a.level << " dim " << a.dimension << " systems " << a.systems << ";";
    throw DomainError("no_match", os.str());
  }

  FieldEmbedding ef{f.system.field, rep.match.field, *rep.match.embedding};
  rep.determinant = determinant_relation(f.system, rep.f2, rep.i, ef, canonical_embedding(rep.f2.field, rep.match.field));
  for (int64_t p : {2, 3, 5, 7}) {
    if (rep.f2.ap.count(p)) rep.minpolys.emplace(p, minpoly_prime_field(rep.f2.field, rep.f2.ap.at(p)));
  }
  rep.caveats = {"irreducibility of the residual representation is assumed", "multiplicity one unchecked: k = ell", "multiplicity one unchecked: unramified at ell",
                 "multiplicity one unchecked: scalar"};
  return rep;
}

AuditRecord largest_subgroup_audit(Workspace& ws, const InputForm& f, int64_t i, int64_t bound) {
  require_coefficients(f, bound);
  AuditRecord rec;
  rec.level_prime = f.weight > 2 ? f.level * static_cast<int64_t>(f.ell) : f.level;
  rec.H = h_from_system(f.system, rec.level_prime, i);
  auto subgroups = intermediate_subgroups(rec.level_prime);
  Subspace pc = plus_cuspidal(ws.space(SubgroupH::trivial(rec.level_prime), 2));
  for (const auto& Hp : subgroups) {
    AuditEntry e;
    e.subgroup = Hp;
    e.contained = Hp.is_subgroup_of(rec.H);
    ReducedSpace R(h_invariant_subspace(pc, Hp), f.ell);
    if (R.dimension() > 0) {
      for (const auto& g : decompose_space(R, primes_up_to(bound))) {
        if (match_twist(f.system, g, i, bound).verdict) {
          e.matched = true;
          break;
        }
      }
    }
    rec.consistent = rec.consistent && e.matched == e.contained;
    rec.entries.push_back(std::move(e));
  }
  return rec;
}

}  // namespace mgr
