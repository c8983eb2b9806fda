#pragma once

// Discrete gradient vector fields on filtered cell complexes and reduction to
// the filtered Morse complex.

#include <cstddef>
#include <utility>
#include <vector>

#include "mpbetti/complex.hpp"
#include "mpbetti/filtration.hpp"

namespace mpb {

/// Discrete vectors (sigma, tau) with sigma a covering face of tau.
struct DiscreteVectorField {
  std::vector<std::pair<CellIndex, CellIndex>> pairs;

  bool empty() const { return pairs.empty(); }
};

/// Critical (M), source (S) and target (T) cells of a vector field, each
/// in increasing index order.
struct CellPartition {
  std::vector<CellIndex> critical;
  std::vector<CellIndex> sources;
  std::vector<CellIndex> targets;
};

CellPartition partition_cells(const CellComplex& x, const DiscreteVectorField& v);

struct DvfViolation {
  enum class Kind { NotCoveringPair, RepeatedCell, ClosedPath };
  Kind kind;
  std::size_t pair;             // offending pair (first pair of the cycle for ClosedPath)
  std::vector<CellIndex> path;  // sigma_0, tau_0, sigma_1, ..., sigma_0 for ClosedPath
};

struct DvfReport {
  std::vector<DvfViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Arcs of the V-path graph: pair i -> pair k whenever sigma_k is a face of
/// tau_i different from sigma_i. Requires a valid matching.
std::vector<std::vector<std::size_t>> vpath_graph(const CellComplex& x, const DiscreteVectorField& v);

/// Matching of covering pairs whose V-path graph has no cycle.
DvfReport validate_dvf(const CellComplex& x, const DiscreteVectorField& v);

struct ConsistencyReport {
  std::vector<std::size_t> violating_pairs;  // pairs with h(sigma) != h(tau)
  bool ok() const { return violating_pairs.empty(); }
};

ConsistencyReport check_consistency(const OneCriticalFiltration& f, const DiscreteVectorField& v);

/// Greedy consistent acyclic matching: within each grade class, cells are
/// visited in index order and paired with their first unmatched same-grade
/// coface that keeps the V-path graph acyclic.
DiscreteVectorField build_matching(const OneCriticalFiltration& f);

struct MorseComplexResult {
  /// Morse complex on the critical cells (same ids) with inherited grades.
  OneCriticalFiltration filtration;
  /// Index in the original complex of each Morse cell, by Morse index.
  std::vector<CellIndex> origin;

  const CellComplex& morse() const { return filtration.complex(); }
};

struct MorseOptions {
#ifdef NDEBUG
  bool check_each_step = false;
#else
  bool check_each_step = true;
#endif
};

/// Cancels the pairs of `v` one at a time (sinks of the V-path graph first),
/// updating kappa'(t, s) = kappa(t, s) - kappa(t, sigma) kappa(tau, s) / kappa(tau, sigma).
/// Throws ContractError when `v` is not a consistent gradient field.
MorseComplexResult morse_complex(const OneCriticalFiltration& f, const DiscreteVectorField& v,
                                 MorseOptions options = {});

}  // namespace mpb
