#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "dirichlet/character.hpp"

using namespace mgr;

TEST_CASE("character literals") {
  auto q3 = DirichletCharacter::parse("3:2^1@2");
  CHECK(q3.order() == 2);
  CHECK(q3.literal() == "3:2^1@2");
  auto q11 = DirichletCharacter::parse("11:2^5@10");
  CHECK(q11.order() == 2);
  CHECK(q11.literal() == "11:2^1@2");
  CHECK(DirichletCharacter::parse("triv:7").is_trivial());
  CHECK(DirichletCharacter::parse("triv:7").literal() == "triv:7");
  CHECK_THROWS_AS(DirichletCharacter::parse("11:3^1@10"), DomainError);
  CHECK_THROWS_AS(DirichletCharacter::parse("11:2^1@3"), DomainError);
  CHECK_THROWS_AS(DirichletCharacter::parse("eleven"), DomainError);
  for (int64_t n = 1; n <= 40; ++n) {
    for (auto& chi : all_characters(n)) CHECK(DirichletCharacter::parse(chi.literal()) == chi);
  }
}

TEST_CASE("induction and conductor examples") {
  auto q3 = DirichletCharacter::parse("3:2^1@2");
  auto up = induce(q3, 39);
  CHECK(conductor(up) == 3);
  CHECK(*up.value_exponent(5) == 1);  // zeta_2 = -1
  auto faithful = DirichletCharacter::parse("13:2^1@12");
  CHECK(conductor(faithful) == 13);
  CHECK(kernel(faithful) == std::vector<int64_t>{1});
  CHECK(kernel(DirichletCharacter::parse("11:2^1@2")) == std::vector<int64_t>{1, 3, 4, 5, 9});
  CHECK(conductor(DirichletCharacter::trivial(1)) == 1);
  CHECK(conductor(DirichletCharacter::trivial(60)) == 1);
  CHECK_THROWS_AS(induce(q3, 10), DomainError);
}

TEST_CASE("induction preserves the conductor") {
  for (int64_t n = 1; n <= 120; ++n) {
    for (int64_t d : divisors(n)) {
      for (auto& chi : all_characters(d)) {
        auto up = induce(chi, n);
        CHECK(conductor(up) == conductor(chi));
        CHECK(up.order() == chi.order());
      }
    }
  }
}

TEST_CASE("character count and orthogonality of values") {
  for (int64_t n = 1; n <= 60; ++n) {
    auto chars = all_characters(n);
    CHECK(static_cast<int64_t>(chars.size()) == euler_phi(n));
    int trivial = 0;
    for (auto& c : chars) trivial += c.is_trivial();
    CHECK(trivial == 1);
  }
}

TEST_CASE("reduction examples") {
  auto q = DirichletCharacter::parse("11:2^1@10");
  auto place = PlaceAboveEll::for_modulus(5, 11);
  auto red = reduce_mod(q, place);
  FqElem minus_one = red.field().from_int(-1);
  for (int64_t x = 1; x < 11; ++x) {
    FqElem v = red.value(x);
    CHECK((v == red.field().one() || v == minus_one));
  }
  auto lift = teichmuller_lift(red, place);
  CHECK(lift == DirichletCharacter::parse("11:2^1@2"));

  auto q4 = DirichletCharacter::parse("4:3^1@2");
  auto p7 = PlaceAboveEll::for_modulus(7, 4);
  CHECK(teichmuller_lift(reduce_mod(q4, p7), p7) == q4);
  auto triv = DirichletCharacter::trivial(9);
  auto p5 = PlaceAboveEll::for_modulus(5, 9);
  CHECK(reduce_mod(triv, p5).is_trivial());
  CHECK(teichmuller_lift(reduce_mod(triv, p5), p5).is_trivial());
}

TEST_CASE("teichmuller lifting contract") {
  for (uint64_t ell : {5, 7, 11, 13}) {
    for (int64_t n = 1; n <= 60; ++n) {
      if (n % static_cast<int64_t>(ell) == 0) continue;
      // ell = 11 at n = 47 and 59 needs F_{11^22} and F_{11^28}
      auto place = PlaceAboveEll::for_modulus(ell, n);
      bool lemma = std::gcd(static_cast<int64_t>(ell), euler_phi(n)) == 1;
      auto chars = all_characters(n);
      for (size_t a = 0; a < chars.size(); ++a) {
        const auto& eps = chars[a];
        auto red = reduce_mod(eps, place);
        auto T = teichmuller_lift(red, place);
        CHECK(reduce_mod(T, place) == red);
        CHECK(kernel(T) == red.kernel());
        CHECK(teichmuller_lift(reduce_mod(T, place), place) == T);
        if (lemma) CHECK(T == eps);
        // products reduce to products
        const auto& other = chars[(a * 7 + 3) % chars.size()];
        CHECK(reduce_mod(eps * other, place) == red * reduce_mod(other, place));
      }
    }
  }
}

TEST_CASE("place images are compatible roots of unity") {
  auto place = PlaceAboveEll::make(13, 12);
  const FqField& F = place.field();
  CHECK(F.degree() == 1);
  CHECK(F.order(place.zeta()) == 12);
  // zeta_12^2 is the image of zeta_6
  CHECK(place.image(12, 2) == place.image(6, 1));
  // ell-part collapses: zeta_26 has image of zeta_2^(13^-1)
  auto p2 = PlaceAboveEll::make(13, 2);
  CHECK(p2.image(26, 13) == p2.image(2, 1));
  CHECK(p2.image(13, 5) == F.one());
  CHECK_THROWS_AS(p2.image(3, 1), DomainError);
}
