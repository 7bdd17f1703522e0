#include <doctest.h>

#include <sstream>

#include "ebc/hard_instances.hpp"
#include "support.hpp"

using namespace ebc;

TEST_CASE("covering construction has no innovative vector") {
  for (unsigned q : {2u, 3u, 4u, 5u})
    for (std::size_t n : {3u, 4u}) {
      CAPTURE(q);
      CAPTURE(n);
      const auto s = gen_appendix_a(Field(q), n);
      REQUIRE(s.k() == q + 1);
      CHECK_FALSE(brute_force_innovative(s));
      for (const auto& u : s.users) CHECK(u.rank() == n - 1);
      // pairwise intersections are exactly the shared (N-2)-dim subspace
      for (std::size_t i = 0; i < s.k(); ++i)
        for (std::size_t j = i + 1; j < s.k(); ++j) {
          Matrix both = s.users[i].received();
          for (std::size_t r = 0; r < s.users[j].rank(); ++r) both.append_row(s.users[j].received().row(r));
          CHECK(rank(both) == n);  // dim(U+W) = N, so dim(U∩W) = N-2
        }
    }
  CHECK_THROWS_AS(gen_appendix_a(Field(3), 1), BadParams);
}

TEST_CASE("clause gadget rows") {
  const Cnf cnf{4, {{-1, -2, 3}}};
  const auto red = reduce_3sat(cnf, Field(2));
  REQUIRE(red.b_matrices.size() == 2);
  CHECK(red.b_matrices[0] ==
        test::rows_of(Field(2), 5, {{1, 0, 0, 0, 1}, {0, 1, 0, 0, 1}, {0, 0, 1, 0, 0}}));
  CHECK(red.b_matrices[1] == test::rows_of(Field(2), 5, {{0, 0, 0, 0, 1}}));

  const auto red3 = reduce_3sat(cnf, Field(3));
  CHECK(red3.b_matrices.size() == 2 + 4);
  CHECK(red3.b_matrices[0].row_vec(0) == Vec{1, 0, 0, 0, 2});
  CHECK(red3.b_matrices[2].row_vec(0) == Vec{2, 0, 0, 0, 2});
}

TEST_CASE("satisfiable single clause") {
  const Cnf cnf{3, {{1, 2, 3}}};
  for (unsigned q : {2u, 3u}) {
    const auto red = reduce_3sat(cnf, Field(q));
    const auto w = brute_force_innovative(red.scenario);
    REQUIRE(w);
    // the witness is a scaled 0/1 assignment; normalise by the last coordinate
    const Field f(q);
    const Elem scale = f.inv((*w)[3]);
    std::vector<bool> a(4, false);
    for (std::size_t v = 0; v < 3; ++v) a[v + 1] = f.mul((*w)[v], scale) == 1;
    CHECK(satisfies(cnf, a));
  }
}

TEST_CASE("reduction round trip on random formulas") {
  Rng rng(51);
  for (int t = 0; t < 60; ++t) {
    const Field f(t % 2 ? 3 : 2);
    const Cnf cnf = random_3cnf(3 + rng.below(4), 1 + rng.below(15), rng);
    const bool sat = brute_force_sat(cnf).has_value();
    REQUIRE(sat == brute_force_innovative(reduce_3sat(cnf, f).scenario).has_value());
  }
}

TEST_CASE("unsatisfiable formula maps to an empty innovative set") {
  // all eight sign patterns on three variables
  Cnf cnf{3, {}};
  for (int m = 0; m < 8; ++m) cnf.clauses.push_back({m & 1 ? -1 : 1, m & 2 ? -2 : 2, m & 4 ? -3 : 3});
  CHECK_FALSE(brute_force_sat(cnf));
  CHECK_FALSE(brute_force_innovative(reduce_3sat(cnf, Field(2)).scenario));
  CHECK_FALSE(brute_force_innovative(reduce_3sat(cnf, Field(3)).scenario));
}

TEST_CASE("random generators") {
  Rng rng(52);
  const Cnf cnf = random_3cnf(5, 20, rng);
  for (const auto& c : cnf.clauses) {
    CHECK(std::abs(c[0]) != std::abs(c[1]));
    CHECK(std::abs(c[1]) != std::abs(c[2]));
    CHECK(std::abs(c[0]) != std::abs(c[2]));
  }
  const auto s = random_scenario(Field(7), 5, 6, rng);
  CHECK(s.k() == 6);
  for (const auto& u : s.users) {
    CHECK(u.rank() < 5);
    u.validate();
  }
}

TEST_CASE("DIMACS round trip") {
  const Cnf cnf{4, {{-1, -2, 3}, {2, 4, -3}}};
  std::stringstream ss;
  write_dimacs(ss, cnf);
  const Cnf back = read_dimacs(ss);
  CHECK(back.vars == 4);
  CHECK(back.clauses == cnf.clauses);

  std::istringstream with_comments("c hello\np cnf 3 1\n1 -2\n 3 0\n");
  CHECK(read_dimacs(with_comments).clauses.size() == 1);
  std::istringstream bad("p cnf 2 1\n1 2 3 0\n");
  CHECK_THROWS_AS(read_dimacs(bad), ParseError);
}
