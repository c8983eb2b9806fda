#pragma once

// Grades in N^n and one-critical multifiltrations.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpbetti/complex.hpp"

namespace mpb {

/// Subset of parameter axes, bit j standing for axis j (0-based).
using AxisMask = std::uint32_t;

/// A point of Z^n with n <= 8, ordered componentwise. Grades with a negative
/// coordinate lie outside N^n; their sublevel sets are empty.
class GradeVector {
 public:
  static constexpr std::size_t kMaxParameters = 8;

  GradeVector() = default;
  explicit GradeVector(std::size_t n, int value = 0);
  GradeVector(std::initializer_list<int> coords);
  static GradeVector from_span(std::span<const int> coords);
  /// Parses "a,b,c"; throws ContractError on malformed text.
  static GradeVector parse(std::string_view text);

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return coords_[i]; }
  int& operator[](std::size_t i) { return coords_[i]; }

  bool in_domain() const;
  /// This grade minus e_alpha.
  GradeVector minus(AxisMask alpha) const;
  GradeVector plus_axis(std::size_t axis, int delta = 1) const;

  std::string to_string() const;

  /// Lexicographic; use precedes() for the product order.
  friend auto operator<=>(const GradeVector&, const GradeVector&) = default;

 private:
  std::uint8_t n_ = 0;
  std::array<int, kMaxParameters> coords_{};
};

/// Componentwise u <= v.
bool precedes(const GradeVector& u, const GradeVector& v);
GradeVector meet(const GradeVector& u, const GradeVector& v);
GradeVector join(const GradeVector& u, const GradeVector& v);

/// All grades of the box [lo, hi], lexicographically ordered.
std::vector<GradeVector> grade_box(const GradeVector& lo, const GradeVector& hi);

using GradeSet = std::set<GradeVector>;

/// A cell complex with one entrance grade per cell.
class OneCriticalFiltration {
 public:
  /// Throws ContractError when a cell has no grade, the parameter count is
  /// outside [1, 8] or inconsistent, or a grade lies outside N^n.
  /// `parameters` = 0 infers n from the grades (1 for an empty complex).
  OneCriticalFiltration(CellComplex complex, std::vector<GradeVector> grades, std::size_t parameters = 0);

  const CellComplex& complex() const { return complex_; }
  std::size_t parameters() const { return n_; }
  const GradeVector& grade(CellIndex c) const { return grades_[c]; }
  const std::vector<GradeVector>& grades() const { return grades_; }

  /// Join of all entrance grades (the origin for an empty complex).
  GradeVector max_grade() const;
  /// X^u = { cells with grade <= u }.
  CellMask sublevel(const GradeVector& u) const;

 private:
  CellComplex complex_;
  std::vector<GradeVector> grades_;
  std::size_t n_;
};

struct FiltrationReport {
  /// Covering pairs (sigma, tau) with h(sigma) not <= h(tau).
  std::vector<std::pair<CellIndex, CellIndex>> violations;
  bool ok() const { return violations.empty(); }
};

FiltrationReport validate_one_critical(const OneCriticalFiltration& f);

/// Checks that the sublevel sets at `grades` intersect to the sublevel set at
/// their meet. Returns a cell on which the two sides differ, if any.
std::optional<CellIndex> meet_intersection_check(const OneCriticalFiltration& f,
                                                 std::span<const GradeVector> grades);

GradeSet entrance_grades(const OneCriticalFiltration& f, std::span<const CellIndex> cells);

/// Closure under joins of nonempty subsets, by pairwise-join fixpoint.
GradeSet lub_closure(const GradeSet& g);

}  // namespace mpb
