#pragma once

// Koszul complexes of multiparameter persistent homology modules, assembled
// directly or as iterated mapping cones, and the Betti tables they compute.

#include <cstddef>
#include <cstdint>
#include <string>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mpbetti/complex.hpp"
#include "mpbetti/errors.hpp"
#include "mpbetti/filtration.hpp"

namespace mpb {

/// H_q(X^w) with chosen bases for every grade w of a window [lo, hi], and the
/// induced maps along every covering step w -> w + e_j inside the window.
/// Grades outside N^n carry the zero space. Immutable after construction.
class PersistenceModuleSlice {
 public:
  /// Window defaults to [(-1,...,-1), max_grade].
  PersistenceModuleSlice(const OneCriticalFiltration& f, int q);
  PersistenceModuleSlice(const OneCriticalFiltration& f, int q, const GradeVector& lo, const GradeVector& hi);

  int degree() const { return q_; }
  std::size_t parameters() const { return lo_.size(); }
  const GradeVector& lo() const { return lo_; }
  const GradeVector& hi() const { return hi_; }
  const PrimeField& field() const { return field_; }

  /// dim H_q(X^w); zero for grades outside N^n. Throws ContractError for
  /// grades in N^n that are not covered by the window.
  std::size_t dim(const GradeVector& w) const;
  const HomologyBasis& basis(const GradeVector& w) const;
  const CellularChains& chains(const GradeVector& w) const;
  /// iota_q^{w, w + e_axis}.
  Matrix step_map(const GradeVector& w, std::size_t axis) const;
  /// iota_q^{u, v} for u <= v, composed along the staircase that raises
  /// axes in the given order (default: increasing).
  Matrix map_between(const GradeVector& u, const GradeVector& v, std::vector<std::size_t> axis_order = {}) const;

 private:
  std::optional<std::size_t> slot(const GradeVector& w) const;
  std::size_t require_slot(const GradeVector& w) const;

  int q_;
  PrimeField field_;
  GradeVector lo_, hi_;
  std::vector<CellularChains> chains_;
  std::vector<HomologyBasis> bases_;
  std::vector<std::vector<Matrix>> steps_;  // steps_[slot][axis], empty when w + e_axis leaves the window
};

/// One direct summand H_q(X^{u - e_subset}) of a Koszul chain space.
struct KoszulSummand {
  AxisMask subset;
  GradeVector grade;
  std::size_t dim;
  std::size_t offset;
};

struct KoszulComplex {
  GradeVector grade;
  AxisMask variables = 0;
  std::vector<std::vector<KoszulSummand>> layout;  // per degree
  ChainComplex chains;

  std::vector<std::size_t> homology_dims() const;
};

/// Summands ordered by subset bitmask; the block from gamma to gamma \ {j}
/// carries (-1)^(s-1) iota_q, s being the rank of j within gamma.
KoszulComplex koszul_direct(const PersistenceModuleSlice& slice, const GradeVector& u, AxisMask variables);

/// Chain map between two complexes: components[i] : B_i -> C_i.
struct ChainMap {
  std::vector<Matrix> components;
};

/// Thrown by mapping_cone when the commutation d^C f = f d^B fails.
class NotChainMapError : public ContractError {
 public:
  explicit NotChainMapError(int degree)
      : ContractError("not a chain map in degree " + std::to_string(degree)), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// cone(f)_i = B_{i-1} (+) C_i with delta(b, c) = (-d^B b, d^C c + f b).
ChainComplex mapping_cone(const ChainComplex& b, const ChainComplex& c, const ChainMap& f);

/// Builds the Koszul complex on the axes of `axis_order` by starting from the
/// one-variable complexes of the first axis and coning the inclusion-induced
/// chain map in each further direction. Throws InvariantError if a cone of
/// two acyclic complexes is not acyclic.
KoszulComplex koszul_via_cones(const PersistenceModuleSlice& slice, const GradeVector& u,
                               const std::vector<std::size_t>& axis_order);

/// Nonzero Betti numbers xi_i^q(u), i = 0..n, keyed by (q, u).
struct BettiTable {
  std::size_t parameters = 1;
  std::uint32_t modulus = 2;
  std::map<std::pair<int, GradeVector>, std::vector<std::size_t>> entries;

  /// Zero for absent entries, negative q and i outside [0, n].
  std::size_t xi(int q, int i, const GradeVector& u) const;
  GradeSet support(int q, int i) const;
  bool operator==(const BettiTable&) const = default;
};

/// Betti tables for q = 0..qmax over the box [0, upper] (default: the
/// bounding box [0, max_grade]).
BettiTable betti_tables(const OneCriticalFiltration& f, int qmax, std::optional<GradeVector> upper = std::nullopt);

struct Bar {
  int degree;
  int birth;
  std::optional<int> death;  // nullopt = infinite

  auto operator<=>(const Bar&) const = default;
};

/// Persistence pairs of a 1-parameter filtration by column reduction of the
/// grade-ordered boundary matrix. Zero-length bars are omitted. Throws
/// ContractError unless n = 1.
std::vector<Bar> barcode_1param(const OneCriticalFiltration& f, int qmax);

struct HilbertFailure {
  int q;
  GradeVector grade;
  std::size_t homology;
  long long alternating_sum;
};

/// Checks dim H_q(X^u) = sum_{v <= u} sum_i (-1)^i xi_i^q(v) on the bounding
/// box for every q <= qmax, computing homology directly from the sublevel sets.
std::optional<HilbertFailure> hilbert_check(const OneCriticalFiltration& f, int qmax, const BettiTable& table);

/// rank iota_q^{u,v} = rank[B_q(X^v) | Z_q(X^u)] - rank B_q(X^v), computed in
/// the chains of X^v without homology bases.
std::size_t persistent_rank(const OneCriticalFiltration& f, int q, const GradeVector& u, const GradeVector& v);

}  // namespace mpb
