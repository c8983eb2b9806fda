#pragma once

// Entrance grades of critical cells, homological critical grades of
// bifiltrations, and checks of the support bounds they imply for Betti tables.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpbetti/filtration.hpp"
#include "mpbetti/koszul.hpp"
#include "mpbetti/morse.hpp"

namespace mpb {

/// Entrance grades of the critical q-cells of a Morse complex.
GradeSet critical_entrance_grades(const OneCriticalFiltration& morse, int q);

/// dim H_q(X^u, X^{u-e1} u X^{u-e2}) for every u in [0, upper] (default: the
/// bounding box), sublevel sets outside N^2 being empty. Requires n = 2.
std::map<GradeVector, std::size_t> relative_critical_dims(const OneCriticalFiltration& f, int q,
                                                          std::optional<GradeVector> upper = std::nullopt);

/// Grades where the relative homology above is nonzero. Requires n = 2.
GradeSet homological_critical_grades(const OneCriticalFiltration& f, int q);

struct ClaimVerdict {
  std::string id;
  int q;
  bool holds;
  std::optional<GradeVector> counterexample;
};

struct DegreeSupport {
  int q = 0;
  std::vector<GradeSet> supports;  // supp xi_i^q, i = 0..n
  GradeSet critical;               // entrance grades of critical q-cells
  GradeSet critical_closure;
  std::optional<GradeSet> homological;  // n = 2 only
  std::optional<GradeSet> homological_closure;
};

struct SupportReport {
  std::size_t parameters = 1;
  std::uint32_t modulus = 2;
  std::optional<std::uint64_t> seed;
  BettiTable table;
  std::vector<DegreeSupport> degrees;
  std::vector<ClaimVerdict> claims;

  bool holds() const;
  /// First failing verdict, if any.
  const ClaimVerdict* first_failure() const;
};

/// Checks, for q = 0..qmax, that the supports of the Betti tables over the box
/// [0, max_grade + 1] lie in the lub-closures of the entrance grades of the
/// critical cells of `v`:
///   support-union  all i       within closure(G(M_q)) u closure(G(M_{q+1}))
///   support-first  i = 0       within closure(G(M_q))
///   support-last   i = n       within closure(G(M_{q+1}))
/// Throws ContractError if `v` is not a consistent gradient field.
SupportReport verify_support_theorem(const OneCriticalFiltration& f, const DiscreteVectorField& v, int qmax);

struct LocalMapsVerdict {
  enum class Status { Holds, Violated, Skipped };
  Status status = Status::Skipped;
  std::optional<std::size_t> direction;  // axis j chosen from the critical-cell census
  std::optional<GradeVector> counterexample;
};

/// For u outside closure(G(M_q)): picks an axis j with M_q^{w - e_j} = M_q^w
/// for every w = u - e_alpha, alpha avoiding j, then checks that
/// H_q(X^{w-e_j}) -> H_q(X^w) is onto and H_{q-1}(X^{w-e_j}) -> H_{q-1}(X^w)
/// is one-to-one. Skipped when u lies in the closure.
LocalMapsVerdict verify_local_maps(const OneCriticalFiltration& f, const DiscreteVectorField& v, int q,
                                   const GradeVector& u);

/// Bifiltration bounds for q = 0..qmax over [0, max_grade + 1]:
///   low-degree-support  xi_0^q, xi_1^{q-1}, xi_2^{q-1} supported in closure(C_q)
///   top-betti-support   xi_2^{q-1} supported in closure(C_q)
///   degree-support      all xi_i^q supported in closure(C_q) u closure(C_{q+1})
///   union-lower         union of C_q within union of supports
///   union-upper         union of supports within union of closure(C_q)
///   sandwich            xi_0^q + xi_1^{q-1} - xi_2^{q-1} <= dim H_q(rel) <= xi_0^q + xi_1^{q-1} + xi_2^{q-2}
///   critical-subset     C_q within G(M_q) for the matching `v`
///   closure-monotone    closure(C_q) within closure(G(M_q))
/// Requires n = 2.
SupportReport verify_bifiltration_bounds(const OneCriticalFiltration& f, const DiscreteVectorField& v, int qmax);

struct SesVerdict {
  bool dims_hold = true;
  bool exactness_holds = true;
  bool ok() const { return dims_hold && exactness_holds; }
};

/// For axes j != l of a bifiltration: dim C_q(X^{v-e_l}, X^{v-e1-e2}) +
/// dim C_q(X^v, X^{v-e1} u X^{v-e2}) = dim C_q(X^v, X^{v-e_j}), and
/// H_q(X^v, X^{v-e1} u X^{v-e2}) = 0, H_q(X^v, X^{v-e_j}) != 0 imply
/// H_q(X^{v-e_l}, X^{v-e1-e2}) != 0. Requires n = 2.
SesVerdict verify_ses_dims(const OneCriticalFiltration& f, const GradeVector& v, int q, std::size_t j);

}  // namespace mpb
