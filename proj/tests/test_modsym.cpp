#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "modsym/space.hpp"

using namespace mgr;

namespace {

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) { return int_mul(a, b); }

IntMatrix identity(size_t n) {
  IntMatrix m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Int trace(const IntMatrix& m) {
  Int t = 0;
  for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// Classical data of X_0(N) and X_1(N).
struct CurveData {
  int64_t mu, nu2, nu3, cusps, genus;
};

CurveData x0_data(int64_t N) {
  CurveData d{N, 1, 1, 0, 0};
  for (auto [p, e] : factorize(N)) {
    d.mu = d.mu / static_cast<int64_t>(p) * static_cast<int64_t>(p + 1);
    int64_t l2 = p == 2 ? 1 : (p % 4 == 1 ? 2 : 0);
    int64_t l3 = p == 3 ? 1 : (p % 3 == 1 ? 2 : 0);
    d.nu2 *= (N % 4 == 0) ? 0 : l2;
    d.nu3 *= (N % 9 == 0) ? 0 : l3;
  }
  for (int64_t t : divisors(N)) d.cusps += euler_phi(std::gcd(t, N / t));
  d.genus = (12 + d.mu - 3 * d.nu2 - 4 * d.nu3 - 6 * d.cusps) / 12;
  return d;
}

int64_t dim_s_gamma0(int64_t N, int k) {
  auto d = x0_data(N);
  if (k == 2) return d.genus;
  return (k - 1) * (d.genus - 1) + (k / 2 - 1) * d.cusps + d.nu2 * (k / 4) + d.nu3 * (k / 3);
}

// N >= 5
int64_t dim_s_gamma1(int64_t N, int k) {
  int64_t mu = N * N;
  for (auto [p, e] : factorize(N)) mu = mu / static_cast<int64_t>(p * p) * static_cast<int64_t>(p * p - 1);
  mu /= 2;
  int64_t c = 0;
  for (int64_t t : divisors(N)) c += euler_phi(t) * euler_phi(N / t);
  c /= 2;
  int64_t g = 1 + mu / 12 - c / 2;
  if (k == 2) return g;
  return (k - 1) * (g - 1) + (k - 2) * c / 2;
}

}  // namespace

TEST_CASE("heilbronn family") {
  for (int64_t n : {1, 2, 3, 5, 12, 49}) {
    for (const auto& h : heilbronn_merel(n)) {
      CHECK(h[0] * h[3] - h[1] * h[2] == n);
      CHECK(h[0] > h[1]);
      CHECK(h[1] >= 0);
      CHECK(h[3] > h[2]);
      CHECK(h[2] >= 0);
    }
  }
  CHECK(heilbronn_merel(2).size() == 4);
}

TEST_CASE("monomial action") {
  auto M = monomial_action({0, -1, 1, 0}, 4);  // P(X, Y) -> P(-Y, X)
  CHECK(M[0][2] == 1);   // Y^2 -> X^2
  CHECK(M[1][1] == -1);  // XY -> -XY
  CHECK(M[2][0] == 1);   // X^2 -> Y^2
  auto I = monomial_action({1, 0, 0, 1}, 6);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(I[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("cuspidal dimensions of the documented spaces") {
  auto level1 = ModularSymbols::build(SubgroupH::trivial(1), 12);
  CHECK(cuspidal_subspace(whole_space(level1)).dimension() == 2);
  CHECK(plus_cuspidal(level1).dimension() == 1);
  auto s11 = ModularSymbols::build(SubgroupH::trivial(11), 2);
  CHECK(cuspidal_subspace(whole_space(s11)).dimension() == 2);
  CHECK(star_plus_subspace(cuspidal_subspace(whole_space(s11))).dimension() == 1);
  auto s15 = ModularSymbols::build(SubgroupH::full(15), 2);
  CHECK(cuspidal_subspace(whole_space(s15)).dimension() == 2);
  auto w2 = ModularSymbols::build(SubgroupH::trivial(1), 2);
  CHECK(cuspidal_subspace(whole_space(w2)).dimension() == 0);
  CHECK(plus_cuspidal(w2).dimension() == 0);
  auto s33 = ModularSymbols::build(SubgroupH::trivial(33), 2);
  CHECK(cuspidal_subspace(whole_space(s33)).dimension() == 42);
}

TEST_CASE("plus-cuspidal dimension matches classical formulas") {
  for (int64_t N = 1; N <= 30; ++N) {
    for (int k : {2, 4, 6, 8, 12}) {
      auto S = ModularSymbols::build(SubgroupH::full(N), k);
      CHECK_MESSAGE(plus_cuspidal(S).dimension() == dim_s_gamma0(N, k), "Gamma0(", N, ") weight ", k);
    }
  }
  for (int64_t N = 5; N <= 20; ++N) {
    for (int k : {2, 3, 4, 5, 6}) {
      auto S = ModularSymbols::build(SubgroupH::trivial(N), k);
      CHECK_MESSAGE(plus_cuspidal(S).dimension() == dim_s_gamma1(N, k), "Gamma1(", N, ") weight ", k);
    }
  }
}

TEST_CASE("hecke eigenvalues of the documented forms") {
  auto level1 = ModularSymbols::build(SubgroupH::trivial(1), 12);
  ReducedSpace d(plus_cuspidal(level1), 13);
  CHECK(d.hecke(2).at(0, 0) == d.field().from_int(-24));
  CHECK(d.hecke(3).at(0, 0) == d.field().from_int(252));
  CHECK(trace(*level1->hecke(2)) == 2 * -24 + (1 + 2048));  // cusp form twice plus the Eisenstein series

  auto s11 = ModularSymbols::build(SubgroupH::trivial(11), 2);
  ReducedSpace r11(plus_cuspidal(s11), 1000003);
  CHECK(r11.hecke(2).at(0, 0) == r11.field().from_int(-2));
  CHECK(r11.hecke(3).at(0, 0) == r11.field().from_int(-1));

  auto s4 = ModularSymbols::build(SubgroupH::trivial(4), 12);
  ReducedSpace r4(plus_cuspidal(s4), 1000003);
  auto cp = r4.hecke(3).charpoly();
  // q - 516 q^3 + ...
  CHECK(cp.eval(r4.field().from_int(-516)).code == 0);
}

TEST_CASE("operators commute and satisfy the Hecke recursion") {
  struct Case {
    int64_t n;
    int k;
    const char* h;
  };
  for (auto c : {Case{13, 2, "trivial"}, Case{7, 3, "trivial"}, Case{5, 4, "trivial"}, Case{6, 6, "trivial"}, Case{9, 4, "full"}, Case{1, 12, "trivial"}}) {
    auto S = ModularSymbols::build(SubgroupH::parse(c.n, c.h), c.k);
    std::vector<IntMatrix> ops;
    for (int p : {2, 3, 5, 7}) ops.push_back(*S->hecke(p));
    ops.push_back(*S->star());
    for (int64_t d = 1; d < c.n; ++d)
      if (std::gcd(d, c.n) == 1) ops.push_back(*S->diamond(d));
    for (size_t a = 0; a < ops.size(); ++a)
      for (size_t b = 0; b < a; ++b) CHECK(mul(ops[a], ops[b]) == mul(ops[b], ops[a]));
    for (int64_t p : {2, 3, 5}) {
      if (c.n % p == 0) continue;
      IntMatrix Tp = *S->hecke(p);
      IntMatrix lhs = mul(Tp, Tp);
      IntMatrix rhs = *S->hecke(p * p);
      IntMatrix D = *S->diamond(p);
      Int pk = 1;
      for (int i = 0; i < c.k - 1; ++i) pk *= p;
      for (size_t i = 0; i < rhs.size(); ++i)
        for (size_t j = 0; j < rhs.size(); ++j) rhs[i][j] += pk * D[i][j];
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("diamond operators") {
  auto S = ModularSymbols::build(SubgroupH::trivial(13), 2);
  CHECK(*S->diamond(1) == identity(S->dimension()));
  CHECK(mul(*S->diamond(2), *S->diamond(3)) == *S->diamond(6));
  CHECK_THROWS_AS(S->diamond(13), DomainError);
  auto cusp = cuspidal_subspace(whole_space(S));
  ReducedSpace r(cusp, 1000003);
  auto D6 = r.diamond(2).pow(6);
  CHECK(D6 == FqMatrix::identity(r.field(), r.dimension()));

  auto s11 = ModularSymbols::build(SubgroupH::trivial(11), 2);
  ReducedSpace r11(cuspidal_subspace(whole_space(s11)), 1000003);
  for (int64_t d = 1; d < 11; ++d) CHECK(r11.diamond(d) == FqMatrix::identity(r11.field(), 2));
}

TEST_CASE("invariant subspaces agree with the subgroup presentation and the genus") {
  auto s33 = ModularSymbols::build(SubgroupH::trivial(33), 2);
  CHECK(h_invariant_subspace(plus_cuspidal(s33), SubgroupH::full(33)).dimension() == 3);
  CHECK(h_invariant_subspace(whole_space(s33), SubgroupH::trivial(33)).dimension() == s33->dimension());
  auto H39 = h_from_eigenform(DirichletCharacter::trivial(3), 12, 0, 13, PlaceAboveEll::for_modulus(13, 39));
  REQUIRE(H39.size() == 4);
  auto s39 = ModularSymbols::build(SubgroupH::trivial(39), 2);
  CHECK(h_invariant_subspace(plus_cuspidal(s39), H39).dimension() == 17);
  CHECK(plus_cuspidal(ModularSymbols::build(H39, 2)).dimension() == 17);
  for (int64_t n = 1; n <= 20; ++n) {
    auto S = ModularSymbols::build(SubgroupH::trivial(n), 2);
    auto pc = plus_cuspidal(S);
    for (const auto& H : intermediate_subgroups(n)) {
      int64_t g = genus(H);
      CHECK(h_invariant_subspace(pc, H).dimension() == g);
      CHECK(plus_cuspidal(ModularSymbols::build(H, 2)).dimension() == g);
    }
  }
}

TEST_CASE("construction is deterministic") {
  auto a = ModularSymbols::build(SubgroupH::trivial(23), 4);
  auto b = ModularSymbols::build(SubgroupH::trivial(23), 4);
  CHECK(*a->hecke(3) == *b->hecke(3));
  CHECK(a->boundary() == b->boundary());
  CHECK_THROWS_AS(ModularSymbols::build(SubgroupH::trivial(500), 2, SpaceOptions{1000, nullptr}), DomainError);
}

TEST_CASE("large Hecke indices at weight 12") {
  // tau(47) = 2687348496, tau(53) = -1596055698; the full space carries the cusp form twice and E_12 once
  auto S = ModularSymbols::build(SubgroupH::trivial(1), 12);
  auto eis = [](long p) -> Int {
    Int e = 1;
    for (int i = 0; i < 11; ++i) e *= p;
    return e + 1;
  };
  CHECK(trace(*S->hecke(47)) == 2 * Int("2687348496") + eis(47));
  CHECK(trace(*S->hecke(53)) == 2 * Int("-1596055698") + eis(53));
  // n = 2809 mixes 128-bit coefficients with GMP accumulation
  IntMatrix rhs = *S->hecke(53 * 53);
  Int p11 = eis(53) - 1;
  for (size_t i = 0; i < rhs.size(); ++i) rhs[i][i] += p11;
  CHECK(mul(*S->hecke(53), *S->hecke(53)) == rhs);
}
