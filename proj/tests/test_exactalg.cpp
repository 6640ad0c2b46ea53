#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "exactalg/fqmatrix.hpp"
#include "exactalg/lattice.hpp"
#include "exactalg/ratlinalg.hpp"

using namespace mgr;

namespace {

std::vector<uint64_t> u64(std::initializer_list<int> v) { return std::vector<uint64_t>(v.begin(), v.end()); }

FqPoly prime_poly(uint64_t ell, std::vector<int64_t> c) { return FqPoly::from_ints(FqField::make(ell, 1), c); }

}  // namespace

TEST_CASE("totient values") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(33) == 20);
  CHECK(euler_phi(42) == 12);
  for (int64_t n = 1; n <= 300; ++n) {
    int64_t count = 0;
    for (int64_t a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    CHECK(euler_phi(n) == count);
  }
  CHECK_THROWS_AS(euler_phi(0), DomainError);
}

TEST_CASE("unit group generators") {
  auto g11 = unit_group(11);
  CHECK(g11->generators == std::vector<int64_t>{2});
  CHECK(g11->orders == std::vector<int64_t>{10});
  auto g8 = unit_group(8);
  CHECK(g8->orders == std::vector<int64_t>{2, 2});
  CHECK(g8->generators == std::vector<int64_t>{7, 5});
  CHECK(unit_group(1)->generators.empty());
  CHECK(unit_group(2)->generators.empty());
  CHECK(unit_group(4)->generators == std::vector<int64_t>{3});
  CHECK(unit_group(13)->generators == std::vector<int64_t>{2});
}

TEST_CASE("unit group is a direct product decomposition") {
  for (int64_t n = 1; n <= 200; ++n) {
    auto G = unit_group(n);
    CHECK(G->order() == euler_phi(n));
    std::set<int64_t> seen;
    for (int64_t x : G->units()) {
      auto e = G->dlog(x);
      REQUIRE(e.has_value());
      CHECK(G->element(*e) == x % n);
      seen.insert(x);
    }
    CHECK(static_cast<int64_t>(seen.size()) == euler_phi(n));
    for (size_t j = 0; j < G->generators.size(); ++j) {
      CHECK(multiplicative_order(G->generators[j], n) == G->orders[j]);
    }
  }
}

TEST_CASE("canonical field moduli") {
  // brute-force least irreducibles, constant coefficient compared first
  CHECK(FqField::make(13, 2).modulus() == u64({1, 3, 1}));
  CHECK(FqField::make(2, 2).modulus() == u64({1, 1, 1}));
  CHECK(FqField::make(2, 3).modulus() == u64({1, 0, 1, 1}));
  CHECK(FqField::make(2, 4).modulus() == u64({1, 0, 0, 1, 1}));
  CHECK(FqField::make(3, 3).modulus() == u64({1, 0, 2, 1}));
  CHECK(FqField::make(5, 4).modulus() == u64({1, 0, 1, 1, 1}));
  CHECK(FqField::make(7, 4).modulus() == u64({1, 0, 0, 1, 1}));
  CHECK(FqField::make(5, 1).modulus() == u64({0, 1}));
  CHECK_THROWS_AS(FqField::make(9, 2), DomainError);
}

TEST_CASE("field invariants") {
  for (uint64_t ell : {2, 3, 5, 7, 11, 13}) {
    for (int r = 1; r <= 4; ++r) {
      FqField F = FqField::make(ell, r);
      FqField P = FqField::make(ell, 1);
      std::vector<int64_t> m(F.modulus().begin(), F.modulus().end());
      if (r > 1) CHECK(is_irreducible(FqPoly::from_ints(P, m)));
      // Frobenius has order exactly r on the generator
      FqElem t = r > 1 ? F.gen() : F.primitive_element();
      FqElem y = t;
      int k = 0;
      do {
        y = F.frobenius(y);
        ++k;
      } while (y != t);
      CHECK(k == r);
      CHECK(F.order(F.primitive_element()) == F.size() - 1);
      // n-th roots of unity are distinct whenever ell does not divide n
      for (uint64_t n = 1; n <= 50; ++n) {
        if (n % ell == 0 || (F.size() - 1) % n != 0) continue;
        FqElem z = F.pow(F.primitive_element(), (F.size() - 1) / n);
        std::set<uint64_t> roots;
        FqElem w = F.one();
        for (uint64_t j = 0; j < n; ++j) {
          roots.insert(w.code);
          w = F.mul(w, z);
        }
        CHECK(roots.size() == n);
      }
    }
  }
}

TEST_CASE("field arithmetic agrees with table-free path") {
  FqField F = FqField::make(3, 5);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    FqElem a{rng() % F.size()}, b{rng() % F.size()}, c{rng() % F.size()};
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    if (a.code) CHECK(F.mul(a, F.inv(a)) == F.one());
    CHECK(F.sub(F.add(a, b), b) == a);
  }
}

TEST_CASE("fields beyond 2^62 elements") {
  FqField F = FqField::make(11, 22);
  FqField P = FqField::make(11, 1);
  std::vector<int64_t> m(F.modulus().begin(), F.modulus().end());
  CHECK(is_irreducible(FqPoly::from_ints(P, m)));
  CHECK(F.modulus() == canonical_modulus(11, 22));
  CHECK_THROWS_AS(F.size(), DomainError);
  CHECK_THROWS_AS(F.primitive_element(), DomainError);

  FqElem t = F.gen();
  CHECK_FALSE(F.in_prime_field(t));
  CHECK(F.from_int(-3) == FqElem{8});
  CHECK(F.to_string(F.add(F.mul(t, t), F.from_int(2))) == "t^2+2");
  std::mt19937_64 rng(3);
  auto random = [&] {
    std::vector<uint64_t> c(22);
    for (auto& x : c) x = rng() % 11;
    return F.from_coeffs(c);
  };
  for (int i = 0; i < 50; ++i) {
    FqElem a = random(), b = random(), c = random();
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.sub(F.add(a, b), b) == a);
    CHECK(F.coeffs(F.from_coeffs(F.coeffs(a))) == F.coeffs(a));
    if (a.code) CHECK(F.mul(a, F.inv(a)) == F.one());
  }
  // Frobenius has order 22 on t
  FqElem y = t;
  int k = 0;
  do {
    y = F.frobenius(y);
    ++k;
  } while (y != t);
  CHECK(k == 22);
  FqElem z = F.root_of_unity(46);
  CHECK(F.pow(z, 46) == F.one());
  CHECK(F.pow(z, 23) != F.one());
  CHECK(F.pow(z, 2) != F.one());
  CHECK(F.pow(z, Int(-1)) == F.inv(z));

  // small fields keep the primitive-power root
  FqField G = FqField::make(7, 2);
  CHECK(G.root_of_unity(8) == G.pow(G.primitive_element(), 6));
}

TEST_CASE("polynomial factorisation examples") {
  auto f1 = poly_factor_fq(prime_poly(13, {3, 3, 1}));
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].factor.coeffs()[0].code == 5);   // x - 8
  CHECK(f1[1].factor.coeffs()[0].code == 11);  // x - 2
  auto f2 = poly_factor_fq(prime_poly(5, {1, 0, 1}));
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].factor.coeffs()[0].code == 2);
  CHECK(f2[1].factor.coeffs()[0].code == 3);
  auto f3 = poly_factor_fq(prime_poly(5, {-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
  REQUIRE(f3.size() == 2);
  CHECK(f3[0].multiplicity == 5);
  CHECK(f3[1].multiplicity == 5);
  CHECK_THROWS_AS(poly_factor_fq(FqPoly(FqField::make(5, 1))), DomainError);
  auto f4 = poly_factor_fq(prime_poly(2, {-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
  std::vector<int> degs;
  for (auto& f : f4) degs.push_back(f.factor.degree());
  CHECK(degs == std::vector<int>{1, 2, 4, 4, 4});
  auto f5 = poly_factor_fq(prime_poly(3, {-1, 0, 0, 0, 0, 0, 0, 0, 1}));
  degs.clear();
  for (auto& f : f5) degs.push_back(f.factor.degree());
  CHECK(degs == std::vector<int>{1, 1, 2, 2, 2});
}

TEST_CASE("factorisation reconstructs random polynomials") {
  std::mt19937_64 rng(11);
  for (auto [ell, r] : std::vector<std::pair<uint64_t, int>>{{2, 1}, {3, 2}, {5, 1}, {7, 2}, {13, 1}, {2, 3}}) {
    FqField F = FqField::make(ell, r);
    for (int trial = 0; trial < 25; ++trial) {
      int deg = 1 + static_cast<int>(rng() % 12);
      std::vector<FqElem> c(deg + 1);
      for (auto& e : c) e = {rng() % F.size()};
      c.back() = F.one();
      FqPoly f(F, c);
      // force repeated factors sometimes
      if (trial % 3 == 0) f = f * f;
      auto fac = poly_factor_fq(f);
      FqPoly prod = FqPoly::constant(F, F.one());
      for (auto& pf : fac) {
        CHECK(is_irreducible(pf.factor));
        for (int k = 0; k < pf.multiplicity; ++k) prod = prod * pf.factor;
      }
      CHECK(prod == f.monic());
    }
  }
}

TEST_CASE("minimal polynomial over the prime field") {
  FqField F = FqField::make(13, 2);
  FqPoly m = minpoly_prime_field(F, F.gen());
  CHECK(m.degree() == 2);
  CHECK(m.coeffs()[0].code == 1);
  CHECK(m.coeffs()[1].code == 3);
  CHECK(minpoly_prime_field(F, F.from_int(4)).degree() == 1);
}

TEST_CASE("charpoly and kernels over finite fields") {
  FqField F = FqField::make(7, 1);
  FqMatrix A(F, 3, 3);
  int vals[3][3] = {{2, 1, 0}, {0, 2, 0}, {0, 0, 5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A.at(i, j) = F.from_int(vals[i][j]);
  FqPoly cp = A.charpoly();
  // (x-2)^2 (x-5)
  CHECK(cp == FqPoly::from_ints(F, {-20, 24, -9, 1}));
  CHECK(A.eval_poly(cp).is_zero());
  FqMatrix B = A - FqMatrix::identity(F, 3).scale(F.from_int(2));
  CHECK(B.left_kernel().rows() == 1);
  CHECK(B.pow(2).left_kernel().rows() == 2);
}

TEST_CASE("field embeddings respect arithmetic") {
  FqField K = FqField::make(5, 2), E = FqField::make(5, 4);
  auto embs = all_embeddings(K, E);
  CHECK(embs.size() == 2);
  std::mt19937_64 rng(3);
  for (auto& emb : embs) {
    for (int i = 0; i < 50; ++i) {
      FqElem a{rng() % K.size()}, b{rng() % K.size()};
      CHECK(emb(K.mul(a, b)) == E.mul(emb(a), emb(b)));
      CHECK(emb(K.add(a, b)) == E.add(emb(a), emb(b)));
    }
  }
}

TEST_CASE("lattice quotient examples") {
  auto q1 = lattice_quotient({{1, 0}, {0, 1}}, {{2, 0}, {0, 3}});
  CHECK(q1.rank == 0);
  CHECK(q1.torsion == std::vector<Int>{2, 3});
  auto q2 = lattice_quotient({{1}}, {{2}});
  CHECK(q2.rank == 0);
  CHECK(q2.torsion == std::vector<Int>{2});
  auto q3 = lattice_quotient({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{4, 6, 0}});
  CHECK(q3.rank == 2);
  CHECK(q3.torsion == std::vector<Int>{2});
}

TEST_CASE("lattice quotient rank is permutation invariant") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    IntMatrix gens{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    IntMatrix rels;
    int nrel = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < nrel; ++i) {
      std::vector<Int> r(4);
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
      rels.push_back(r);
    }
    auto base = lattice_quotient(gens, rels);
    std::vector<int> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix prel;
    for (auto& r : rels) {
      std::vector<Int> p(4);
      for (int j = 0; j < 4; ++j) p[perm[j]] = r[j];
      prel.push_back(p);
    }
    std::reverse(prel.begin(), prel.end());
    auto other = lattice_quotient(gens, prel);
    CHECK(base.rank == other.rank);
    CHECK(base.torsion == other.torsion);
    // rank agrees with rational rank
    RatMatrix rm;
    for (auto& r : rels) {
      std::vector<Rat> v;
      for (auto& x : r) v.emplace_back(x);
      rm.push_back(v);
    }
    CHECK(base.rank == 4 - rat_rank(rm));
  }
}

TEST_CASE("relation outside the lattice is rejected") {
  CHECK_THROWS_AS(lattice_quotient({{2, 0}, {0, 2}}, {{1, 0}}), DomainError);
}

TEST_CASE("hermite form spans the same lattice") {
  IntMatrix m{{4, 6, 2}, {2, 4, 8}, {6, 10, 10}};
  IntMatrix h = hnf_rows(m);
  CHECK(h.size() == 2);
  CHECK(smith_diagonal(m) == std::vector<Int>{2, 2});
}

TEST_CASE("rational echelon kernel") {
  RatEchelon E(4);
  E.add_row({{0, Rat(1)}, {1, Rat(2)}, {3, Rat(-1)}});
  E.add_row({{1, Rat(1, 2)}, {2, Rat(1)}});
  CHECK_FALSE(E.add_row({{0, Rat(2)}, {1, Rat(4)}, {3, Rat(-2)}}));
  auto K = E.kernel_basis();
  CHECK(K.size() == 2);
  for (auto& v : K) {
    for (auto& row : E.rows()) {
      Rat s = 0;
      for (auto& [k, a] : row) s += a * sparse_get(v, k);
      CHECK(s == 0);
    }
  }
}

TEST_CASE("saturation at a prime") {
  // span of (3,3,0) and (0,3,3) over Z_(3) contains (1,1,0) and (0,1,1)
  std::vector<std::vector<Rat>> B{{Rat(3), Rat(3), Rat(0)}, {Rat(0), Rat(3), Rat(3)}};
  auto S = saturate_at_prime(B, 3);
  FqMatrix M = reduce_rows(S, FqField::make(3, 1), 3);
  CHECK(M.rank() == 2);
  // (1,2,1)/... : vectors whose reduction is dependent get divided
  std::vector<std::vector<Rat>> C{{Rat(1), Rat(1), Rat(0)}, {Rat(1), Rat(4), Rat(0)}};
  auto T = saturate_at_prime(C, 3);
  CHECK(reduce_rows(T, FqField::make(3, 1), 3).rank() == 2);
  CHECK_THROWS_AS(FqField::make(3, 1).from_rat(Rat(1, 3)), DomainError);
}

TEST_CASE("integer polynomial strings") {
  CHECK(parse_int_poly("x^2+3*x+3") == std::vector<Int>{3, 3, 1});
  CHECK(parse_int_poly("x^4 - x^2 + 1") == std::vector<Int>{1, 0, -1, 0, 1});
  CHECK(parse_int_poly("-2x+7") == std::vector<Int>{7, -2});
  CHECK(int_poly_to_string({3, 3, 1}) == "x^2+3*x+3");
  CHECK(int_poly_to_string({1, 0, -1, 0, 1}) == "x^4-x^2+1");
  CHECK_THROWS_AS(parse_int_poly("x^"), DomainError);
}
