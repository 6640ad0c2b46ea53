// One line per acceptance criterion; exit status 1 when any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>

#include "pipeline/tables.hpp"

using namespace mgr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

const std::vector<uint64_t> kElls = {5, 7, 11, 13};
constexpr int64_t kTruncate = 50;

Workspace& workspace() {
  static Workspace ws;
  return ws;
}

const std::vector<TableResult>& table_results() {
  static const auto results = reproduce_tables(workspace(), 13, kTruncate);
  return results;
}

std::string row_name(const TableRow& r) { return "N=" + std::to_string(r.level) + " ell=" + std::to_string(r.ell); }

int64_t powmod_small(int64_t x, int64_t e, int64_t m) {
  int64_t r = 1 % m;
  x = mod64(x, m);
  for (; e > 0; e >>= 1, x = x * x % m)
    if (e & 1) r = r * x % m;
  return r;
}

Outcome table_dimensions() {
  Outcome o;
  int ok = 0;
  for (const auto& t : table_results()) {
    bool match = t.report.d1 == t.row.d1 && t.report.dH == t.row.dH;
    o.require(match, row_name(t.row) + ": d1/dH " + std::to_string(t.report.d1) + "/" + std::to_string(t.report.dH));
    ok += match;
  }
  o.require(table_results().size() == 17, "expected 17 rows");
  o.detail = std::to_string(ok) + "/" + std::to_string(table_results().size()) + " rows";
  return o;
}

Outcome table_congruences() {
  Outcome o;
  int flagged = 0;
  for (const auto& t : table_results()) {
    const auto& f = t.form.system;
    const auto& g = t.report.f2;
    const auto& m = t.report.match;
    const int64_t i = t.report.i;
    const int64_t L = static_cast<int64_t>(t.row.ell);
    bool differs_ok = t.row.level == 1 && t.row.ell == 11;
    if (differs_ok) {
      o.require(i == 0 || i == 5, row_name(t.row) + ": i outside {0,5}");
      bool flag = std::find(t.flags.begin(), t.flags.end(), "I_DIFFERS_FROM_TABLE") != t.flags.end();
      o.require(flag == (i != t.row.i), row_name(t.row) + ": discrepancy not flagged");
      flagged += flag;
    } else {
      o.require(i == t.row.i, row_name(t.row) + ": i = " + std::to_string(i));
    }
    if (!m.embedding) {
      o.require(false, row_name(t.row) + ": no embedding");
      continue;
    }
    const FqField& C = m.field;
    FieldEmbedding ef{f.field, C, *m.embedding};
    FieldEmbedding eg = canonical_embedding(g.field, C);
    for (int64_t p : primes_up_to(kTruncate)) {
      if ((t.row.level * L) % p == 0) continue;
      if (!f.ap.count(p) || !g.ap.count(p)) {
        o.require(false, row_name(t.row) + ": missing a_" + std::to_string(p));
        continue;
      }
      FqElem rhs = C.mul(C.pow(C.from_int(p), static_cast<uint64_t>(i)), eg(g.ap.at(p)));
      o.require(ef(f.ap.at(p)) == rhs, row_name(t.row) + ": congruence fails at p=" + std::to_string(p));
    }
  }
  o.detail = std::to_string(table_results().size()) + " rows, primes <= 50, " + std::to_string(flagged) + " printed-i discrepancy flagged";
  return o;
}

Outcome residue_fields() {
  Outcome o;
  for (const auto& t : table_results()) {
    const auto& g = t.report.f2;
    bool ok = g.ap.count(2) && minpoly_divides(g.field, g.ap.at(2), t.row.a2_polynomial);
    o.require(ok, row_name(t.row) + ": minpoly(a_2) does not divide " + t.row.a2_polynomial);
  }
  o.detail = std::to_string(table_results().size()) + " rows";
  return o;
}

struct GridPoint {
  int64_t N;
  uint64_t ell;
  int k;
  int64_t i;
};

void for_grid(const std::function<void(const GridPoint&)>& fn) {
  for (int64_t N = 1; N <= 6; ++N)
    for (uint64_t ell : kElls)
      for (int k = 3; k <= 14; ++k)
        for (int64_t i = 0; i < static_cast<int64_t>(ell); ++i) fn({N, ell, k, i});
}

// {x in (Z/N ell)^* : x^(k-2-2i) = 1 mod ell}, by brute force
int64_t enumerate_h(const GridPoint& g) {
  int64_t L = static_cast<int64_t>(g.ell), m = g.N * L, e = g.k - 2 - 2 * g.i, count = 0;
  int64_t ee = mod64(e, L - 1);
  for (int64_t x = 1; x < m; ++x)
    if (std::gcd(x, m) == 1 && powmod_small(x, ee, L) == 1) ++count;
  return count;
}

Outcome index_formula() {
  Outcome o;
  int64_t points = 0;
  for_grid([&](const GridPoint& g) {
    ++points;
    int64_t L = static_cast<int64_t>(g.ell), m = g.N * L, e = g.k - 2 - 2 * g.i;
    int64_t predicted = euler_phi(m) * std::gcd(L - 1, std::abs(e)) / (L - 1);
    int64_t counted = enumerate_h(g);
    std::ostringstream at;
    at << "N=" << g.N << " ell=" << g.ell << " k=" << g.k << " i=" << g.i;
    o.require(counted == predicted, at.str() + ": #H " + std::to_string(counted) + " vs " + std::to_string(predicted));
    o.require(predicted_kernel_order(m, g.ell, e) == predicted, at.str() + ": library formula");
    if (g.N % L != 0) {
      auto place = PlaceAboveEll::for_modulus(g.ell, g.N);
      auto H = h_from_eigenform(DirichletCharacter::trivial(g.N), g.k, static_cast<int>(g.i), g.ell, place);
      o.require(index_gamma(H) == counted, at.str() + ": library subgroup");
    }
  });
  o.detail = std::to_string(points) + " grid points";
  return o;
}

Outcome gamma0_criteria() {
  Outcome o;
  int64_t points = 0, corollary = 0;
  for_grid([&](const GridPoint& g) {
    ++points;
    int64_t L = static_cast<int64_t>(g.ell), e = g.k - 2 - 2 * g.i;
    bool is_gamma0 = enumerate_h(g) == euler_phi(g.N * L);
    bool divides = e % (L - 1) == 0;
    std::ostringstream at;
    at << "N=" << g.N << " ell=" << g.ell << " k=" << g.k << " i=" << g.i;
    o.require(is_gamma0 == divides, at.str() + ": Gamma_0 criterion");
    o.require(gamma0_criterion(g.ell, g.k, static_cast<int>(g.i)) == is_gamma0, at.str() + ": library criterion");
    if (g.i == 0 && L >= g.k - 1) {
      ++corollary;
      o.require(is_gamma0 == (L == g.k - 1), at.str() + ": i = 0 criterion");
    }
  });
  o.detail = std::to_string(points) + " grid points, " + std::to_string(corollary) + " with i = 0 and ell >= k-1";
  return o;
}

Outcome teichmuller_suite() {
  Outcome o;
  int64_t chars = 0;
  for (uint64_t ell : kElls) {
    for (int64_t n = 1; n <= 60; ++n) {
      if (n % static_cast<int64_t>(ell) == 0) continue;
      auto place = PlaceAboveEll::for_modulus(ell, n);
      bool coprime = std::gcd(static_cast<int64_t>(ell), euler_phi(n)) == 1;
      for (const auto& eps : all_characters(n)) {
        ++chars;
        auto red = reduce_mod(eps, place);
        auto T = teichmuller_lift(red, place);
        std::string at = eps.literal() + " ell=" + std::to_string(ell);
        o.require(reduce_mod(T, place) == red, at + ": reduce(lift) differs");
        o.require(kernel(T) == red.kernel(), at + ": kernels differ");
        if (coprime) o.require(T == eps, at + ": lift differs from the character");
      }
    }
  }
  o.detail = std::to_string(chars) + " (character, ell) pairs";
  return o;
}

Outcome genus_crosscheck() {
  Outcome o;
  int64_t checked = 0;
  auto check = [&](const SubgroupH& H) {
    ++checked;
    Subspace pc = plus_cuspidal(workspace().space(SubgroupH::trivial(H.level()), 2));
    int64_t inv = h_invariant_subspace(pc, H).dimension();
    int64_t g = genus(H);
    o.require(inv == g, "n=" + std::to_string(H.level()) + " H=" + H.describe() + ": genus " + std::to_string(g) + " vs " + std::to_string(inv));
  };
  for (int64_t n = 1; n <= 42; ++n)
    for (const auto& H : intermediate_subgroups(n)) check(H);
  for (const auto& t : table_results()) {
    int64_t lp = t.report.level_prime;
    if (lp == 55 || lp == 65 || lp == 66 || lp == 78) check(t.report.H);
  }
  o.detail = std::to_string(checked) + " subgroups";
  return o;
}

using I128 = __int128;

// Exact product, in 128-bit arithmetic while it cannot overflow.
IntMatrix product(const IntMatrix& a, const IntMatrix& b) {
  size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  std::vector<std::vector<I128>> B(b.size(), std::vector<I128>(m));
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = 0; j < m; ++j) {
      if (!b[i][j].fits_slong_p()) return int_mul(a, b);
      B[i][j] = b[i][j].get_si();
    }
  IntMatrix out(n, std::vector<Int>(m));
  for (size_t i = 0; i < n; ++i) {
    std::vector<I128> acc(m, 0);
    for (size_t k = 0; k < a[i].size(); ++k) {
      if (a[i][k] == 0) continue;
      if (!a[i][k].fits_slong_p()) return int_mul(a, b);
      I128 x = a[i][k].get_si();
      for (size_t j = 0; j < m; ++j) {
        if (!B[k][j]) continue;
        I128 t;
        if (__builtin_mul_overflow(x, B[k][j], &t) || __builtin_add_overflow(acc[j], t, &acc[j])) return int_mul(a, b);
      }
    }
    for (size_t j = 0; j < m; ++j) {
      bool neg = acc[j] < 0;
      unsigned __int128 u = neg ? -static_cast<unsigned __int128>(acc[j]) : static_cast<unsigned __int128>(acc[j]);
      Int v = Int(static_cast<unsigned long>(u >> 64));
      v <<= 64;
      v += static_cast<unsigned long>(static_cast<uint64_t>(u));
      out[i][j] = neg ? Int(-v) : v;
    }
  }
  return out;
}

Outcome algebra_invariants() {
  Outcome o;
  table_results();  // the grid: every space the table reproduction built
  const auto primes = primes_up_to(20);
  int64_t spaces = 0, pairs = 0;
  for (const auto& sp : workspace().spaces()) {
    ++spaces;
    std::string at = "level " + std::to_string(sp->level()) + " weight " + std::to_string(sp->weight());
    for (size_t a = 0; a < primes.size(); ++a)
      for (size_t b = a + 1; b < primes.size(); ++b) {
        const IntMatrix& Tp = *sp->hecke(primes[a]);
        const IntMatrix& Tq = *sp->hecke(primes[b]);
        ++pairs;
        o.require(product(Tp, Tq) == product(Tq, Tp), at + ": T_" + std::to_string(primes[a]) + " T_" + std::to_string(primes[b]));
      }
  }
  // decomposition bookkeeping on every reduced space of the pipeline
  int64_t reduced = 0;
  auto complete = [&](const Subspace& s, uint64_t ell, const std::string& at) {
    ReducedSpace R(s, ell);
    if (R.dimension() == 0) return;
    ++reduced;
    int64_t total = 0;
    for (const auto& sys : decompose_space(R, primes, true)) total += sys.multiplicity * sys.field.degree();
    o.require(total == R.dimension(), at + ": decomposition covers " + std::to_string(total) + " of " + std::to_string(R.dimension()));
  };
  for (const auto& t : table_results()) {
    const auto& r = t.report;
    std::string at = row_name(t.row);
    complete(plus_cuspidal(workspace().space(SubgroupH::trivial(t.row.level), kTableWeight)), t.row.ell, at + " input");
    if (r.twist) complete(plus_cuspidal(workspace().space(SubgroupH::trivial(r.twist->level), r.twist->weight)), t.row.ell, at + " twist");
    for (const auto& a : r.attempts) {
      Subspace s = h_invariant_subspace(plus_cuspidal(workspace().space(SubgroupH::trivial(a.level), 2)), r.H.project(a.level));
      complete(s, t.row.ell, at + " level " + std::to_string(a.level));
    }
  }
  o.detail = std::to_string(pairs) + " commuting pairs on " + std::to_string(spaces) + " spaces, " + std::to_string(reduced) + " reduced spaces complete";
  return o;
}

Outcome subgroup_audit() {
  Outcome o;
  struct Case {
    int64_t level;
    uint64_t ell;
    FormSelector sel;
  };
  FormSelector delta, level3;
  delta.coefficients = {{2, Int(-24)}};
  level3.coefficients = {{2, Int(78)}, {3, Int(-243)}};
  std::vector<Case> cases = {{1, 11, delta}, {3, 11, level3}, {3, 13, level3}};
  std::ostringstream detail;
  for (const auto& c : cases) {
    InputForm f = select_input_form(workspace(), c.level, kTableWeight, c.ell, c.sel, kTruncate);
    RealizationReport r = realize(workspace(), f, kTruncate);
    AuditRecord a = largest_subgroup_audit(workspace(), f, r.i, kTruncate);
    int matched = 0;
    for (const auto& e : a.entries) {
      matched += e.matched;
      o.require(e.matched == e.subgroup.is_subgroup_of(a.H),
                "level " + std::to_string(a.level_prime) + " H'=" + e.subgroup.describe() + ": matched " + (e.matched ? "yes" : "no"));
    }
    o.require(a.H == r.H, "level " + std::to_string(a.level_prime) + ": audit subgroup differs from the report");
    detail << (detail.tellp() ? ", " : "") << "level " << a.level_prime << " " << matched << "/" << a.entries.size();
  }
  o.detail = detail.str() + " subgroups match";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "table dimensions d1, dH", table_dimensions},
      {2, "table congruences a_p(f) = p^i a_p(f2)", table_congruences},
      {3, "residue field of a_2(f2)", residue_fields},
      {4, "index formula for #H", index_formula},
      {5, "Gamma_0 criteria", gamma0_criteria},
      {6, "Teichmuller lifting", teichmuller_suite},
      {7, "genus equals H-invariant dimension", genus_crosscheck},
      {8, "Hecke commutation and decomposition completeness", algebra_invariants},
      {9, "largest subgroup audit", subgroup_audit},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("%s %d %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), static_cast<long long>(ms));
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
