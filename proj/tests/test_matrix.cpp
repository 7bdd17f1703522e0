#include <doctest.h>

#include <sstream>

#include "ebc/matrix.hpp"
#include "support.hpp"

using namespace ebc;
using test::random_matrix;
using test::random_vec;

TEST_CASE("rref of small matrices") {
  const Field f2(2);
  const Matrix id = Matrix::identity(f2, 4);
  const auto r = rref(id);
  CHECK(r.rref == id);
  CHECK(r.rank == 4);
  CHECK(r.pivot_cols == std::vector<std::size_t>{0, 1, 2, 3});

  const Matrix m = test::rows_of(f2, 5, {{1, 1, 1, 0, 1}, {0, 1, 0, 0, 1}});
  CHECK(rank(m) == 2);
  CHECK(test::rank_by_span(m) == 2);
}

TEST_CASE("rref is idempotent and rank matches the span oracle") {
  Rng rng(11);
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field f(q);
    for (int t = 0; t < 40; ++t) {
      const Matrix m = random_matrix(f, 1 + rng.below(4), 1 + rng.below(5), rng);
      const auto r = rref(m);
      CHECK(rref(r.rref).rref == r.rref);
      CHECK(r.rank == test::rank_by_span(m));
      CHECK(test::span_of(r.rref) == test::span_of(m));
    }
  }
}

TEST_CASE("null space basis") {
  const Field f2(2);
  const Matrix c = test::rows_of(f2, 4, {{1, 0, 0, 0}});
  const Matrix b = null_space_basis(c);
  CHECK(b.rows() == 3);
  CHECK(rank(b) == 3);
  for (std::size_t i = 0; i < b.rows(); ++i) CHECK(b(i, 0) == 0);

  // a clause's B_i paired with its C_i
  const Matrix bi = test::rows_of(f2, 5, {{1, 0, 0, 0, 1}, {0, 1, 0, 0, 1}, {0, 0, 1, 0, 0}});
  const Matrix ci = test::rows_of(f2, 5, {{0, 0, 0, 1, 0}, {1, 1, 0, 0, 1}});
  CHECK(test::span_of(null_space_basis(ci)) == test::span_of(bi));
  CHECK((ci * bi.transpose()).is_zero());

  CHECK(null_space_basis(Matrix::identity(Field(5), 3)).rows() == 0);
}

TEST_CASE("null space duality on random matrices") {
  Rng rng(12);
  for (unsigned q : {2u, 5u, 256u}) {
    const Field f(q);
    for (int t = 0; t < 100; ++t) {
      const std::size_t n = 1 + rng.below(9);
      Matrix c = random_matrix(f, rng.below(n + 3), n, rng);
      if (rng.below(3) == 0 && c.rows() > 1) c.append_row(c.row(0));  // force dependence
      const Matrix b = null_space_basis(c);
      REQUIRE(rank(c) + rank(b) == n);
      REQUIRE(b.rows() == n - rank(c));
      REQUIRE((c * b.transpose()).is_zero());
    }
  }
}

TEST_CASE("row-space membership, both paths") {
  const Field f2(2);
  const Matrix c = test::rows_of(f2, 2, {{1, 0}});
  CHECK_FALSE(in_row_space(Vec{1, 1}, c));
  CHECK_FALSE(in_row_space_dual(Vec{1, 1}, c));
  CHECK(in_row_space(Vec{0, 0}, c));
  CHECK(in_row_space(Vec{1, 0}, c));
  CHECK_THROWS_AS(in_row_space(Vec{1, 0, 0}, c), DimensionMismatch);

  Rng rng(13);
  for (int t = 0; t < 500; ++t) {
    const Field f(t % 2 ? 3 : 4);
    const std::size_t n = 1 + rng.below(4);
    const Matrix m = random_matrix(f, rng.below(n + 1), n, rng);
    const Vec x = rng.below(2) && m.rows() ? m.row_vec(rng.below(m.rows())) : random_vec(f, n, rng);
    const bool expect = test::span_of(m).count(x) > 0;
    REQUIRE(in_row_space(x, m) == expect);
    REQUIRE(in_row_space_dual(x, m) == expect);
  }
}

TEST_CASE("dense solver") {
  const Field f2(2);
  const Matrix id = Matrix::identity(f2, 3);
  const Matrix rhs = test::rows_of(f2, 1, {{1}, {0}, {1}});
  auto s = solve_dense(id, rhs);
  REQUIRE(s);
  CHECK(s->x == rhs);

  const Matrix parity = test::rows_of(f2, 2, {{1, 0}, {0, 1}, {1, 1}});
  CHECK_FALSE(solve_dense(parity, test::rows_of(f2, 1, {{1}, {1}, {1}})));

  Rng rng(14);
  const Field f(256);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + rng.below(10);
    Matrix a = random_matrix(f, n, n, rng);
    if (rank(a) < n) continue;
    const Matrix x = random_matrix(f, n, 2, rng);
    auto sol = solve_dense(a, a * x);
    REQUIRE(sol);
    CHECK(sol->x == x);
  }
}

TEST_CASE("underdetermined solutions set free variables to zero") {
  const Field f(5);
  const Matrix a = test::rows_of(f, 3, {{1, 2, 0}});
  const auto s = solve_dense(a, test::rows_of(f, 1, {{3}}));
  REQUIRE(s);
  CHECK(s->x(0, 0) == 3);
  CHECK(s->x(1, 0) == 0);
  CHECK(s->x(2, 0) == 0);
}

TEST_CASE("sparse solver agrees with dense") {
  Rng rng(15);
  for (unsigned q : {2u, 256u})
    for (int t = 0; t < 200; ++t) {
      const Field f(q);
      const std::size_t n = 2 + rng.below(12);
      const std::size_t w = 1 + rng.below(4);
      Matrix a(f, n + rng.below(3) - 1, n);
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t e = 0; e < w; ++e) a(i, rng.below(n)) = static_cast<Elem>(rng.below(q));
      Matrix rhs = random_matrix(f, a.rows(), 1 + rng.below(2), rng);
      if (rng.below(2)) rhs = a * random_matrix(f, n, rhs.cols(), rng);
      const auto d = solve_dense(a, rhs);
      const auto s = solve_sparse(a, rhs, w);
      REQUIRE(d.has_value() == s.has_value());
      if (d) {
        CHECK(d->x == s->x);
        CHECK(d->rank == s->rank);
        CHECK(a * s->x == rhs);
      }
    }
}

TEST_CASE("sparse solver on a permutation system reads off the answer") {
  const Field f(7);
  const Matrix a = test::rows_of(f, 3, {{0, 0, 2}, {3, 0, 0}, {0, 1, 0}});
  const auto s = solve_sparse(a, test::rows_of(f, 1, {{4}, {6}, {5}}), 1);
  REQUIRE(s);
  CHECK(s->x == test::rows_of(f, 1, {{2}, {5}, {2}}));
}

TEST_CASE("sparse elimination is cheaper on sparse systems") {
  Rng rng(16);
  const Field f(256);
  const std::size_t n = 64, w = 4;
  Matrix a(f, 0, n);
  while (a.rows() < n) {
    Vec r(n, 0);
    r[a.rows()] = static_cast<Elem>(1 + rng.below(255));
    for (std::size_t e = 1; e < w; ++e) r[rng.below(n)] = static_cast<Elem>(1 + rng.below(255));
    a.append_row(r);
  }
  const Matrix rhs = random_matrix(f, n, 1, rng);
  OpMeter dense_meter;
  const auto d = solve_dense(a, rhs);
  const auto dense_ops = dense_meter.elapsed().total();
  OpMeter sparse_meter;
  const auto s = solve_sparse(a, rhs, w);
  const auto sparse_ops = sparse_meter.elapsed().total();
  REQUIRE(d.has_value() == s.has_value());
  CHECK(sparse_ops * 4 < dense_ops);
}

TEST_CASE("matrix text round trip") {
  Rng rng(17);
  const Field f(256, 0x11B);
  const Matrix m = random_matrix(f, 3, 4, rng);
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);

  std::istringstream bad("2 2 3\n1 2\n3 0\n");
  CHECK_THROWS_AS(read_matrix(bad), ParseError);
}
