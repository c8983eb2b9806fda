#pragma once

// Shared fixtures and brute-force oracles for the test suites.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mpbetti/algebra.hpp"
#include "mpbetti/complex.hpp"
#include "mpbetti/filtration.hpp"
#include "mpbetti/io.hpp"

namespace fixtures {

using namespace mpb;

// Triangle boundary on v1, v2, v3 entering at (0,0), (1,0), (0,1).
inline FiltrationDocument triangle_boundary(std::uint32_t p = 2) {
  return lower_star(PrimeField(p), {{1, 2}, {1, 3}, {2, 3}}, {{1, {0, 0}}, {2, {1, 0}}, {3, {0, 1}}});
}

inline CellIndex cell(const OneCriticalFiltration& f, const std::string& id) { return *f.complex().find(id); }

// Bifiltrations with at most 10 vertices, grades in [0,3].
inline FiltrationDocument random_bifiltration(std::uint64_t seed, std::uint32_t p = 2) {
  GeneratorParams g;
  g.parameters = 2;
  g.vertices = 3 + seed % 8;
  g.fill = {0.45, 0.35};
  g.grade_max = 3;
  g.modulus = p;
  g.seed = seed;
  return generate_random(g);
}

// 3-parameter filtrations with at most 8 vertices, grades in [0,2].
inline FiltrationDocument random_trifiltration(std::uint64_t seed, std::uint32_t p = 2) {
  GeneratorParams g;
  g.parameters = 3;
  g.vertices = 3 + seed % 6;
  g.fill = {0.5, 0.35};
  g.grade_max = 2;
  g.modulus = p;
  g.seed = seed;
  return generate_random(g);
}

// 1-parameter filtrations with at most 10 vertices, grades in [0,4].
inline FiltrationDocument random_onefiltration(std::uint64_t seed, std::uint32_t p = 2) {
  GeneratorParams g;
  g.parameters = 1;
  g.vertices = 2 + seed % 9;
  g.fill = {0.5, 0.4};
  g.grade_max = 4;
  g.modulus = p;
  g.seed = seed;
  return generate_random(g);
}

inline Matrix random_matrix(std::mt19937_64& rng, PrimeField f, std::size_t rows, std::size_t cols) {
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = static_cast<std::uint32_t>(rng() % f.modulus());
  return m;
}

// Every vector of F_p^n, for exhaustive oracles at tiny sizes.
inline std::vector<Vector> all_vectors(const PrimeField& f, std::size_t n) {
  std::vector<Vector> out{Vector(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (std::uint32_t a = 0; a < f.modulus(); ++a) {
        Vector w = v;
        w[k] = a;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

// Rank as log_p of the size of the image, by enumeration.
inline std::size_t brute_rank(const Matrix& a) {
  std::set<Vector> image;
  for (const auto& x : all_vectors(a.field(), a.cols())) image.insert(a.apply(x));
  std::size_t r = 0;
  for (std::size_t size = 1; size < image.size(); size *= a.field().modulus()) ++r;
  return r;
}

// dim H_q(X^u) straight from the sublevel chains.
inline std::size_t homology_at(const OneCriticalFiltration& f, int q, const GradeVector& u) {
  return cellular_chains(f.complex(), f.sublevel(u)).chains.homology_dim(q);
}

}  // namespace fixtures
