#pragma once

// Lefschetz cell complexes, their chain complexes and homology.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpbetti/algebra.hpp"

namespace mpb {

using CellIndex = std::size_t;

struct Incidence {
  CellIndex cell;
  std::uint32_t coeff;  // nonzero
};

/// Input record for CellComplex::build. Boundary entries reference other
/// cells by id; coefficients are reduced mod p and zeros are dropped.
struct CellSpec {
  std::string id;
  int dim = 0;
  std::vector<std::pair<std::string, std::int64_t>> boundary;
};

/// Finite graded cell set with a sparse incidence function kappa.
///
/// Cells are stored sorted by (dim, id); a cell's index is its position in
/// that order, so every matrix built from the complex is reproducible. The
/// complex is immutable after construction. Construction does not enforce the
/// incidence axioms; use validate_complex for that.
class CellComplex {
 public:
  explicit CellComplex(PrimeField field = PrimeField(2)) : field_(field) {}

  /// Throws ContractError on duplicate ids or references to unknown ids.
  static CellComplex build(PrimeField field, std::vector<CellSpec> specs);

  const PrimeField& field() const { return field_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(CellIndex c) const { return ids_[c]; }
  int dim(CellIndex c) const { return dims_[c]; }
  int top_dim() const { return static_cast<int>(dim_offsets_.size()) - 2; }

  /// Faces with nonzero incidence kappa(c, face), sorted by index.
  std::span<const Incidence> boundary(CellIndex c) const { return boundary_[c]; }
  /// Cofaces with nonzero incidence kappa(coface, c), sorted by index.
  std::span<const Incidence> coboundary(CellIndex c) const { return coboundary_[c]; }

  /// Indices of the q-cells (contiguous, increasing); empty outside [0, top_dim].
  std::vector<CellIndex> cells_of_dim(int q) const;
  std::size_t count_of_dim(int q) const;

  std::optional<CellIndex> find(std::string_view id) const;
  std::uint32_t incidence(CellIndex tau, CellIndex sigma) const;
  /// Covering face relation: sigma < tau iff kappa(tau, sigma) != 0.
  bool covers(CellIndex tau, CellIndex sigma) const { return incidence(tau, sigma) != 0; }

  /// Specs reproducing this complex (ids and incidences), in index order.
  std::vector<CellSpec> specs() const;

 private:
  PrimeField field_;
  std::vector<std::string> ids_;
  std::vector<int> dims_;
  std::vector<std::vector<Incidence>> boundary_;
  std::vector<std::vector<Incidence>> coboundary_;
  std::vector<std::size_t> dim_offsets_{0};
  std::unordered_map<std::string, CellIndex> by_id_;
};

/// Membership flags indexed by CellIndex (1 = member).
using CellMask = std::vector<char>;

CellMask full_mask(const CellComplex& x);
CellMask empty_mask(const CellComplex& x);
bool is_face_closed(const CellComplex& x, const CellMask& mask);

struct ComplexViolation {
  enum class Kind { DimensionGap, NonzeroSquare };
  Kind kind;
  CellIndex tau;
  CellIndex sigma;
};

struct ComplexReport {
  std::vector<ComplexViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks kappa(tau,sigma) != 0 => dim tau = dim sigma + 1 and
/// sum_rho kappa(tau,rho) kappa(rho,sigma) = 0 for every pair.
ComplexReport validate_complex(const CellComplex& x);

/// Rows indexed by the (q-1)-cells, columns by the q-cells, both in index order.
Matrix boundary_matrix(const CellComplex& x, int q);

/// Bounded chain complex of F_p-spaces in degrees 0..top_degree().
/// differential(i) is the dim(i-1) x dim(i) matrix of d_i.
class ChainComplex {
 public:
  explicit ChainComplex(PrimeField field = PrimeField(2)) : field_(field) {}
  /// `differentials[i-1]` is d_i for i = 1..dims.size()-1.
  ChainComplex(PrimeField field, std::vector<std::size_t> dims, std::vector<Matrix> differentials);

  const PrimeField& field() const { return field_; }
  /// Number of stored degrees; all degrees >= this are zero.
  std::size_t length() const { return dims_.size(); }
  std::size_t dim(int i) const;
  Matrix differential(int i) const;

  /// True iff d_{i-1} d_i = 0 for every i.
  bool is_complex() const;
  std::size_t homology_dim(int i) const;
  bool is_acyclic() const;

 private:
  PrimeField field_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> diffs_;
};

/// A chain complex built from cells, remembering which cell spans each
/// basis vector in every degree.
struct CellularChains {
  ChainComplex chains;
  std::vector<std::vector<CellIndex>> basis;  // basis[q] = cells in degree q, increasing

  std::optional<std::size_t> position(int q, CellIndex c) const;
};

/// C_*(Y) for the cells flagged in `y` (face-closed).
CellularChains cellular_chains(const CellComplex& x, const CellMask& y);
/// C_*(Y, A): spanned by Y \ A, with rows/columns of A deleted.
CellularChains relative_chains(const CellComplex& x, const CellMask& y, const CellMask& a);

/// A chosen section of H_q: cycle representatives completing a basis of the
/// boundaries. Representatives come from the lexicographically first pivot
/// set of [boundaries | cycles].
class HomologyBasis {
 public:
  HomologyBasis(const ChainComplex& c, int q);

  int degree() const { return q_; }
  std::size_t dim() const { return reps_.cols(); }
  const Matrix& cycle_reps() const { return reps_; }
  const Matrix& boundary_basis() const { return boundaries_; }

  /// Coordinates of the class of cycle z in the cycle_reps basis; nullopt when
  /// z is not a cycle in the span of [boundary_basis | cycle_reps].
  std::optional<Vector> coordinates(std::span<const std::uint32_t> z) const;

 private:
  int q_;
  Matrix reps_;
  Matrix boundaries_;
  std::shared_ptr<const RowEchelon> solver_;
};

HomologyBasis homology_basis(const ChainComplex& c, int q);

/// Matrix of iota_q : H_q(source) -> H_q(target) for an inclusion of cellular
/// chain complexes, in the given bases. Throws ContractError when a source
/// cell is missing from the target and InvariantError when a representative
/// cannot be expressed (corrupted bases).
Matrix induced_map(const CellularChains& source, const CellularChains& target, int q, const HomologyBasis& bs,
                   const HomologyBasis& bt);

/// dim H_q(X, A). Throws ContractError when A is not face-closed.
std::size_t relative_homology_dim(const CellComplex& x, const CellMask& a, int q);
/// dim H_q(Y, A) for subcomplexes A within Y within X.
std::size_t relative_homology_dim(const CellComplex& x, const CellMask& y, const CellMask& a, int q);

// Simplicial helpers ------------------------------------------------------

using Simplex = std::vector<int>;  // strictly increasing vertex labels

/// "v3", "e1_3", "t1_2_3", and "s<d>_..." for higher dimensions.
std::string simplex_id(const Simplex& s);

/// Cell specs for named simplices, with kappa(s, s minus its k-th vertex) =
/// (-1)^k. Throws ContractError when a face is missing or a vertex list is
/// not strictly increasing.
std::vector<CellSpec> simplicial_specs(const std::vector<std::pair<std::string, Simplex>>& simplices);

/// Closes `simplices` under faces and names them with simplex_id.
std::vector<Simplex> close_under_faces(const std::vector<Simplex>& simplices);
CellComplex simplicial_complex(PrimeField field, const std::vector<Simplex>& simplices);

}  // namespace mpb
