#include <doctest.h>

#include "ebc/field.hpp"
#include "support.hpp"

using namespace ebc;

TEST_CASE("prime field basics") {
  const Field f3(3), f5(5);
  CHECK(f3.add(2, 2) == 1);
  CHECK(f3.mul(2, 2) == 1);
  CHECK(f3.neg(1) == 2);
  CHECK(f5.add(0, 4) == 4);
  CHECK(f5.inv(2) == 3);
  const Field f7(7);
  for (Elem a = 0; a < 7; ++a) CHECK(f7.sub(a, a) == 0);
}

TEST_CASE("binary extension basics") {
  const Field f(256);
  CHECK(f.poly() == 0x11D);
  CHECK(f.add(0xFF, 0xFF) == 0);
  CHECK(f.mul(0x02, 0x80) == 0x1D);
  CHECK(Field(2).neg(1) == 1);
  for (unsigned a = 1; a < 256; ++a) CHECK(f.mul(static_cast<Elem>(a), f.inv(static_cast<Elem>(a))) == 1);
}

TEST_CASE("tables agree with a bitwise carry-less product") {
  for (unsigned q : {4u, 8u, 16u, 32u, 64u, 128u, 256u}) {
    const Field f(q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b)
        REQUIRE(f.mul(static_cast<Elem>(a), static_cast<Elem>(b)) == test::clmul_mod(a, b, f.poly(), f.degree()));
  }
  const Field aes(256, 0x11B);
  CHECK(aes.mul(0x57, 0x83) == 0xC1);
}

TEST_CASE("field axioms, exhaustive for small q") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
    if (q == 9) {
      CHECK_THROWS_AS(Field(9), BadParams);
      continue;
    }
    const Field f(q);
    CAPTURE(q);
    for (unsigned a = 0; a < q; ++a) {
      const auto x = static_cast<Elem>(a);
      REQUIRE(f.add(x, 0) == x);
      REQUIRE(f.mul(x, 1) == x);
      REQUIRE(f.add(x, f.neg(x)) == 0);
      if (a) REQUIRE(f.mul(x, f.inv(x)) == 1);
      for (unsigned b = 0; b < q; ++b) {
        const auto y = static_cast<Elem>(b);
        REQUIRE(f.add(x, y) == f.add(y, x));
        REQUIRE(f.mul(x, y) == f.mul(y, x));
        REQUIRE(f.sub(f.add(x, y), y) == x);
        if (b) REQUIRE(f.mul(f.div(x, y), y) == x);
        for (unsigned c = 0; c < q; ++c) {
          const auto z = static_cast<Elem>(c);
          REQUIRE(f.add(f.add(x, y), z) == f.add(x, f.add(y, z)));
          REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
          REQUIRE(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST_CASE("GF(256) pairwise axioms") {
  const Field f(256);
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b) {
      const auto x = static_cast<Elem>(a), y = static_cast<Elem>(b);
      REQUIRE(f.mul(x, y) == f.mul(y, x));
      REQUIRE(f.add(x, y) == f.add(y, x));
      if (b) REQUIRE(f.mul(f.div(x, y), y) == x);
    }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Field(0), BadParams);
  CHECK_THROWS_AS(Field(6), BadParams);
  CHECK_THROWS_AS(Field(263), BadParams);
  CHECK_THROWS_AS(Field(512), BadParams);
  CHECK_THROWS_AS(Field(256, 0x100), BadParams);
  CHECK_THROWS_AS(Field(3).inv(0), ZeroInverse);
  CHECK(Field(257).order() == 257);
}

TEST_CASE("parse") {
  CHECK(Field::parse("q=256") == Field(256));
  CHECK(Field::parse("q=256,poly=0x11B").poly() == 0x11B);
  CHECK(Field::parse("q=5").order() == 5);
  CHECK_THROWS(Field::parse("q=x"));
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible_gf2(0x11D));
  CHECK(is_irreducible_gf2(0x11B));
  CHECK_FALSE(is_irreducible_gf2(0x105));  // (x^4+x+1)^2
  CHECK(is_irreducible_gf2(0x7));
  CHECK_FALSE(is_irreducible_gf2(0x5));
}

TEST_CASE("op counters") {
  const Field f(256);
  OpMeter meter;
  f.mul(3, 4);
  f.add(3, 4);
  f.mul(0, 9);
  const auto e = meter.elapsed();
  CHECK(e.mul == 2);
  CHECK(e.add == 1);
}
