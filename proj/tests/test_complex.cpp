#include <doctest.h>

#include "fixtures.hpp"
#include "mpbetti/errors.hpp"

using namespace mpb;

namespace {

CellComplex triangle(std::uint32_t p, bool filled) {
  std::vector<Simplex> s{{1, 2}, {1, 3}, {2, 3}};
  if (filled) s.push_back({1, 2, 3});
  return simplicial_complex(PrimeField(p), s);
}

std::size_t hdim(const CellComplex& x, int q) { return cellular_chains(x, full_mask(x)).chains.homology_dim(q); }

}  // namespace

TEST_CASE("validate_complex examples") {
  CHECK(validate_complex(CellComplex(PrimeField(2))).ok());
  CHECK(validate_complex(triangle(3, false)).ok());

  auto bad = CellComplex::build(PrimeField(2), {{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {{"a", 1}, {"b", 1}}},
                                                {"f", 1, {{"e", 1}}}});
  auto report = validate_complex(bad);
  REQUIRE(!report.ok());
  CHECK(report.violations.front().kind == ComplexViolation::Kind::DimensionGap);
  CHECK(bad.id(report.violations.front().tau) == "f");
  CHECK(bad.id(report.violations.front().sigma) == "e");
}

TEST_CASE("nonzero square is reported") {
  // edge boundary a + b over F_3 fails once a 2-cell has boundary 1*e
  auto x = CellComplex::build(PrimeField(3), {{"a", 0, {}}, {"b", 0, {}}, {"e", 1, {{"a", 1}, {"b", 1}}},
                                              {"t", 2, {{"e", 1}}}});
  auto report = validate_complex(x);
  REQUIRE(!report.ok());
  CHECK(report.violations.front().kind == ComplexViolation::Kind::NonzeroSquare);
}

TEST_CASE("build rejects duplicate and unknown ids") {
  CHECK_THROWS_AS(CellComplex::build(PrimeField(2), {{"a", 0, {}}, {"a", 0, {}}}), ContractError);
  CHECK_THROWS_AS(CellComplex::build(PrimeField(2), {{"e", 1, {{"zz", 1}}}}), ContractError);
}

TEST_CASE("boundary_matrix examples") {
  auto t = triangle(3, false);
  CHECK(boundary_matrix(t, 2).cols() == 0);
  auto edge = simplicial_complex(PrimeField(2), {{1, 2}});
  auto d = boundary_matrix(edge, 1);
  CHECK(d.column(0) == Vector{1, 1});

  auto d1 = boundary_matrix(t, 1);
  for (std::size_t c = 0; c < d1.cols(); ++c) {
    auto col = d1.column(c);
    CHECK(std::count(col.begin(), col.end(), 1u) == 1);
    CHECK(std::count(col.begin(), col.end(), 2u) == 1);
  }
}

TEST_CASE("homology examples") {
  auto pt = simplicial_complex(PrimeField(2), {{1}});
  HomologyBasis b(cellular_chains(pt, full_mask(pt)).chains, 0);
  CHECK(b.dim() == 1);
  CHECK(b.cycle_reps().column(0) == Vector{1});

  for (std::uint32_t p : {2u, 3u}) {
    CHECK(hdim(triangle(p, false), 0) == 1);
    CHECK(hdim(triangle(p, false), 1) == 1);
    CHECK(hdim(triangle(p, true), 1) == 0);
  }
}

TEST_CASE("homology basis invariants") {
  auto t = triangle(5, false);
  auto c = cellular_chains(t, full_mask(t));
  for (int q = 0; q <= 1; ++q) {
    HomologyBasis b(c.chains, q);
    CHECK((c.chains.differential(q) * b.cycle_reps()).is_zero());
    auto both = hconcat(b.boundary_basis(), b.cycle_reps());
    CHECK(rank(both) == both.cols());
    CHECK(b.dim() == c.chains.homology_dim(q));
  }
}

TEST_CASE("induced map examples") {
  auto doc = fixtures::triangle_boundary();
  const auto& f = doc.filtration;
  const auto& x = f.complex();
  auto full = cellular_chains(x, full_mask(x));
  HomologyBasis bf(full.chains, 0);
  CHECK(induced_map(full, full, 0, bf, bf) == Matrix::identity(x.field(), 1));

  CellMask one = empty_mask(x);
  one[fixtures::cell(f, "v1")] = 1;
  auto pt = cellular_chains(x, one);
  CHECK(induced_map(pt, full, 0, HomologyBasis(pt.chains, 0), bf) == Matrix::from_rows(x.field(), {{1}}));

  auto a = cellular_chains(x, f.sublevel({1, 0}));
  auto b = cellular_chains(x, f.sublevel({1, 1}));
  CHECK(induced_map(a, b, 0, HomologyBasis(a.chains, 0), HomologyBasis(b.chains, 0)) ==
        Matrix::from_rows(x.field(), {{1}}));
  CHECK_THROWS_AS(induced_map(b, a, 0, HomologyBasis(b.chains, 0), HomologyBasis(a.chains, 0)), ContractError);
}

TEST_CASE("relative homology examples") {
  auto doc = fixtures::triangle_boundary();
  const auto& f = doc.filtration;
  const auto& x = f.complex();
  for (int q = 0; q <= 1; ++q) {
    CHECK(relative_homology_dim(x, full_mask(x), q) == 0);
    CHECK(relative_homology_dim(x, empty_mask(x), q) == hdim(x, q));
  }
  CellMask a = f.sublevel({0, 1});
  CellMask b = f.sublevel({1, 0});
  for (std::size_t c = 0; c < a.size(); ++c) a[c] = a[c] || b[c];
  CHECK(relative_homology_dim(x, a, 1) == 1);

  CellMask open = empty_mask(x);
  open[fixtures::cell(f, "e1_2")] = 1;
  CHECK_THROWS_AS(relative_homology_dim(x, open, 1), ContractError);
}

TEST_CASE("Euler characteristic and relative rank bookkeeping on random complexes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto doc = fixtures::random_bifiltration(seed, seed % 2 ? 3 : 2);
    const auto& f = doc.filtration;
    const auto& x = f.complex();
    REQUIRE(validate_complex(x).ok());
    long long cells = 0, betti = 0;
    for (int q = 0; q <= x.top_dim(); ++q) {
      long long sign = q % 2 ? -1 : 1;
      cells += sign * static_cast<long long>(x.count_of_dim(q));
      betti += sign * static_cast<long long>(hdim(x, q));
      CHECK((boundary_matrix(x, q) * boundary_matrix(x, q + 1)).is_zero());
    }
    CHECK(cells == betti);

    CellMask a = f.sublevel({1, 1});
    auto ca = cellular_chains(x, a);
    for (int q = 0; q <= x.top_dim(); ++q) {
      std::size_t below = q ? ca.chains.homology_dim(q - 1) : 0;
      CHECK(relative_homology_dim(x, a, q) <= hdim(x, q) + below);
    }
  }
}

TEST_CASE("simplicial helpers") {
  CHECK(simplex_id({3}) == "v3");
  CHECK(simplex_id({1, 3}) == "e1_3");
  CHECK(simplex_id({1, 2, 3}) == "t1_2_3");
  CHECK(simplex_id({1, 2, 3, 4}) == "s3_1_2_3_4");
  CHECK(close_under_faces({{1, 2, 3}}).size() == 7);
  CHECK_THROWS_AS(simplicial_specs({{"e", {2, 1}}}), ContractError);
  CHECK_THROWS_AS(simplicial_specs({{"e", {1, 2}}}), ContractError);
}

TEST_CASE("chain complex degrees") {
  PrimeField f(2);
  ChainComplex c(f, {1, 1}, {Matrix::from_rows(f, {{1}})});
  CHECK(c.is_complex());
  CHECK(c.is_acyclic());
  CHECK(c.differential(5).rows() == 0);
  CHECK(c.dim(-1) == 0);
}
