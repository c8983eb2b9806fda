#pragma once

// Text format for filtered complexes, lower-star filtrations, random
// fixtures, and CSV/JSON output of Betti tables and support reports.
//
//   format v1
//   params n=<n> p=<prime> kind=<simplicial|general>
//   cell <id> dim=<q> grade=<g1,...,gn> [verts=<v1,...> | bdry=<id:coeff,...>]
//
// '#' starts a comment; a comment of the form "# seed=<S>" records the seed
// of a generated fixture.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpbetti/complex.hpp"
#include "mpbetti/critical.hpp"
#include "mpbetti/filtration.hpp"
#include "mpbetti/koszul.hpp"
#include "mpbetti/morse.hpp"

namespace mpb {

enum class ComplexKind { Simplicial, General };

struct FiltrationDocument {
  OneCriticalFiltration filtration;
  ComplexKind kind = ComplexKind::General;
  std::vector<Simplex> simplices;  // vertex list per cell index (simplicial documents)
  std::optional<std::uint64_t> seed;
};

/// Strict parser. Throws InputError (Syntax with line and column; Semantic
/// naming the offending cells) on any malformed or invalid input. The result
/// passes validate_complex and validate_one_critical.
FiltrationDocument parse_document(std::string_view text);
FiltrationDocument load_document(const std::string& path);

/// Cells in index order, so every boundary refers to an earlier line.
std::string print_document(const FiltrationDocument& doc);

/// Same ids, dimensions, incidences, grades, modulus and kind.
bool structurally_equal(const FiltrationDocument& a, const FiltrationDocument& b);

/// Closes `simplices` under faces and grades each simplex by the join of its
/// vertex grades. Throws ContractError when a vertex has no grade.
FiltrationDocument lower_star(PrimeField field, const std::vector<Simplex>& simplices,
                              const std::map<int, GradeVector>& vertex_grades);

struct GeneratorParams {
  std::size_t parameters = 2;
  std::size_t vertices = 8;
  int top_dim = 2;
  std::vector<double> fill{0.5, 0.3};  // inclusion probability for dims 1, 2, ...
  int grade_max = 3;                   // coordinates uniform in [0, grade_max]
  std::uint32_t modulus = 2;
  std::uint64_t seed = 0;
};

/// Random complex grown skeleton by skeleton: a d-simplex is a candidate once all its facets
/// are present and is kept with probability fill[d-1]; vertex grades are
/// uniform and the filtration is lower-star. Deterministic in the seed on
/// every platform.
FiltrationDocument generate_random(const GeneratorParams& params);

/// Rows "q,u1,...,un,i,xi" for the nonzero entries, sorted.
std::string betti_csv(const BettiTable& table);
/// FNV-1a 64 of the printed document.
std::uint64_t fixture_hash(const FiltrationDocument& doc);
std::string betti_json(const BettiTable& table, std::optional<std::uint64_t> seed = std::nullopt,
                       std::optional<std::uint64_t> hash = std::nullopt);
std::string report_json(const SupportReport& report);
/// Document, matching and failing claim, for reproducing a violated verdict.
std::string counterexample_bundle(const FiltrationDocument& doc, const DiscreteVectorField& v,
                                  const ClaimVerdict& claim);

}  // namespace mpb
