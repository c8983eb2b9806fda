#include <doctest.h>

#include "fixtures.hpp"
#include "mpbetti/errors.hpp"

using namespace mpb;

TEST_CASE("prime field axioms hold exhaustively for small p") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    PrimeField f(p);
    for (std::uint32_t a = 0; a < p; ++a) {
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.add(a, f.neg(a)) == 0);
      for (std::uint32_t b = 0; b < p; ++b) {
        CHECK(f.sub(f.add(a, b), b) == a);
        for (std::uint32_t c = 0; c < p; ++c) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
  }
}

TEST_CASE("field construction rejects composites and inverse of zero") {
  CHECK_THROWS_AS(PrimeField(4), ContractError);
  CHECK_THROWS_AS(PrimeField(1), ContractError);
  CHECK_THROWS_AS(PrimeField(2).inv(0), ContractError);
  CHECK_NOTHROW(PrimeField(2147483647u));
  CHECK(PrimeField(5).reduce(-1) == 4);
}

TEST_CASE("field elements refuse to mix moduli") {
  FieldElement a(PrimeField(3), 2), b(PrimeField(5), 2);
  CHECK_THROWS_AS(a + b, ContractError);
  CHECK((a * a).value() == 1);
  CHECK((a / a).value() == 1);
  CHECK((-a).value() == 1);
}

TEST_CASE("rank examples") {
  CHECK(rank(Matrix::identity(PrimeField(2), 2)) == 2);
  CHECK(rank(Matrix(PrimeField(5), 3, 3)) == 0);
  CHECK(rank(Matrix::from_rows(PrimeField(2), {{1, 1}, {1, 1}})) == 1);
  CHECK(rank(Matrix(PrimeField(2), 0, 4)) == 0);
}

TEST_CASE("solve examples") {
  PrimeField f2(2);
  auto id = Matrix::identity(f2, 3);
  Vector b{1, 0, 1};
  auto r = solve(id, b);
  REQUIRE(r.solved());
  CHECK(r.x == b);

  auto zero = solve(Matrix(f2, 2, 2), Vector{1, 0});
  CHECK(zero.status == SolveResult::Status::Inconsistent);

  auto tri = solve(Matrix::from_rows(f2, {{1, 1}, {0, 1}}), Vector{0, 1});
  REQUIRE(tri.solved());
  CHECK(tri.x == Vector{1, 1});
  int solutions = 0;
  for (const auto& x : fixtures::all_vectors(f2, 2))
    if (Matrix::from_rows(f2, {{1, 1}, {0, 1}}).apply(x) == Vector{0, 1}) {
      ++solutions;
      CHECK(x == Vector{1, 1});
    }
  CHECK(solutions == 1);

  CHECK(solve(id, Vector{1, 0}).status == SolveResult::Status::DimensionMismatch);
}

TEST_CASE("nullspace examples") {
  PrimeField f2(2);
  CHECK(nullspace_basis(Matrix::identity(f2, 3)).cols() == 0);
  CHECK(nullspace_basis(Matrix(PrimeField(3), 4, 4)).cols() == 4);
  auto k = nullspace_basis(Matrix::from_rows(f2, {{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(k.column(0) == Vector{1, 1});
}

TEST_CASE("rank agrees with the enumeration oracle on tiny matrices") {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 60; ++trial) {
      auto a = fixtures::random_matrix(rng, f, 1 + rng() % 3, 1 + rng() % 3);
      CHECK(rank(a) == fixtures::brute_rank(a));
    }
  }
}

TEST_CASE("rank-nullity and kernel columns on random matrices") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 80; ++trial) {
      auto a = fixtures::random_matrix(rng, f, rng() % 7, rng() % 7);
      auto k = nullspace_basis(a);
      CHECK(rank(a) + k.cols() == a.cols());
      CHECK(rank(k) == k.cols());
      CHECK((a * k).is_zero());
    }
  }
}

TEST_CASE("solve is exact or provably inconsistent") {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 80; ++trial) {
      auto a = fixtures::random_matrix(rng, f, 1 + rng() % 5, 1 + rng() % 5);
      auto bm = fixtures::random_matrix(rng, f, a.rows(), 1);
      Vector b = bm.column(0);
      auto r = solve(a, b);
      if (r.solved())
        CHECK(a.apply(r.x) == b);
      else
        CHECK(rank(hconcat(a, bm)) == rank(a) + 1);
      RowEchelon e(a);
      CHECK(e.solve(b).has_value() == r.solved());
    }
  }
}

TEST_CASE("reduced form is in row echelon shape with unit pivots") {
  std::mt19937_64 rng(17);
  PrimeField f(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = fixtures::random_matrix(rng, f, 4, 6);
    RowEchelon e(a);
    const auto& r = e.reduced();
    for (std::size_t i = 0; i < e.rank(); ++i) {
      CHECK(r(i, e.pivot_columns()[i]) == 1);
      for (std::size_t k = 0; k < r.rows(); ++k)
        if (k != i) CHECK(r(k, e.pivot_columns()[i]) == 0);
    }
  }
}
