#include "mpbetti/koszul.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <tuple>

#include "mpbetti/errors.hpp"

namespace mpb {

// PersistenceModuleSlice --------------------------------------------------

PersistenceModuleSlice::PersistenceModuleSlice(const OneCriticalFiltration& f, int q)
    : PersistenceModuleSlice(f, q, GradeVector(f.parameters(), -1), f.max_grade()) {}

PersistenceModuleSlice::PersistenceModuleSlice(const OneCriticalFiltration& f, int q, const GradeVector& lo,
                                               const GradeVector& hi)
    : q_(q), field_(f.complex().field()), lo_(lo), hi_(hi) {
  if (lo.size() != f.parameters() || hi.size() != f.parameters())
    throw ContractError("slice window does not match the parameter count");
  const CellComplex& x = f.complex();
  const auto grades = grade_box(lo, hi);
  chains_.reserve(grades.size());
  bases_.reserve(grades.size());
  for (const auto& w : grades) {
    chains_.push_back(cellular_chains(x, f.sublevel(w)));
    bases_.emplace_back(chains_.back().chains, q);
  }
  const std::size_t n = parameters();
  steps_.resize(grades.size());
  for (std::size_t s = 0; s < grades.size(); ++s) {
    steps_[s].resize(n);
    for (std::size_t axis = 0; axis < n; ++axis) {
      GradeVector next = grades[s].plus_axis(axis);
      auto t = slot(next);
      if (!t) continue;
      steps_[s][axis] = induced_map(chains_[s], chains_[*t], q, bases_[s], bases_[*t]);
    }
  }
}

std::optional<std::size_t> PersistenceModuleSlice::slot(const GradeVector& w) const {
  if (w.size() != lo_.size()) return std::nullopt;
  std::size_t index = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < lo_[i] || w[i] > hi_[i]) return std::nullopt;
    index = index * static_cast<std::size_t>(hi_[i] - lo_[i] + 1) + static_cast<std::size_t>(w[i] - lo_[i]);
  }
  return index;
}

std::size_t PersistenceModuleSlice::require_slot(const GradeVector& w) const {
  auto s = slot(w);
  if (!s) throw ContractError("grade (" + w.to_string() + ") lies outside the module slice window");
  return *s;
}

std::size_t PersistenceModuleSlice::dim(const GradeVector& w) const {
  if (!w.in_domain()) return 0;
  return bases_[require_slot(w)].dim();
}

const HomologyBasis& PersistenceModuleSlice::basis(const GradeVector& w) const { return bases_[require_slot(w)]; }

const CellularChains& PersistenceModuleSlice::chains(const GradeVector& w) const { return chains_[require_slot(w)]; }

Matrix PersistenceModuleSlice::step_map(const GradeVector& w, std::size_t axis) const {
  if (axis >= parameters()) throw ContractError("axis out of range");
  GradeVector next = w.plus_axis(axis);
  const std::size_t rows = dim(next);
  const std::size_t cols = dim(w);
  if (!rows || !cols) return Matrix(field_, rows, cols);
  return steps_[require_slot(w)][axis];
}

Matrix PersistenceModuleSlice::map_between(const GradeVector& u, const GradeVector& v,
                                           std::vector<std::size_t> axis_order) const {
  if (!precedes(u, v)) throw ContractError("map_between requires u <= v");
  if (axis_order.empty())
    for (std::size_t a = 0; a < parameters(); ++a) axis_order.push_back(a);
  Matrix m = Matrix::identity(field_, dim(u));
  GradeVector cur = u;
  for (std::size_t axis : axis_order)
    while (cur[axis] < v[axis]) {
      m = step_map(cur, axis) * m;
      cur = cur.plus_axis(axis);
    }
  if (cur != v) throw ContractError("axis order does not reach the target grade");
  return m;
}

// Koszul complexes --------------------------------------------------------

std::vector<std::size_t> KoszulComplex::homology_dims() const {
  std::vector<std::size_t> out(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) out[i] = chains.homology_dim(static_cast<int>(i));
  return out;
}

namespace {

void check_variables(const PersistenceModuleSlice& slice, AxisMask variables) {
  if (variables == 0) throw ContractError("Koszul complex needs at least one variable");
  if (variables >> slice.parameters()) throw ContractError("variable set is not a subset of [n]");
}

std::size_t total_dim(const std::vector<KoszulSummand>& summands) {
  return summands.empty() ? 0 : summands.back().offset + summands.back().dim;
}

}  // namespace

KoszulComplex koszul_direct(const PersistenceModuleSlice& slice, const GradeVector& u, AxisMask variables) {
  check_variables(slice, variables);
  const int t = std::popcount(variables);
  KoszulComplex k;
  k.grade = u;
  k.variables = variables;
  k.layout.resize(static_cast<std::size_t>(t) + 1);
  for (AxisMask gamma = 0; gamma < (AxisMask{1} << slice.parameters()); ++gamma) {
    if (gamma & ~variables) continue;
    auto& degree = k.layout[static_cast<std::size_t>(std::popcount(gamma))];
    GradeVector g = u.minus(gamma);
    degree.push_back({gamma, g, slice.dim(g), total_dim(degree)});
  }

  std::vector<std::size_t> dims;
  for (const auto& degree : k.layout) dims.push_back(total_dim(degree));
  std::vector<Matrix> diffs;
  for (int i = 1; i <= t; ++i) {
    const auto& targets = k.layout[i - 1];
    Matrix d(slice.field(), dims[i - 1], dims[i]);
    for (const auto& src : k.layout[i]) {
      int rank_in_gamma = 0;
      for (std::size_t j = 0; j < slice.parameters(); ++j) {
        if (!(src.subset & (1u << j))) continue;
        ++rank_in_gamma;
        AxisMask face = src.subset & ~(1u << j);
        auto tgt = std::find_if(targets.begin(), targets.end(), [&](const KoszulSummand& s) { return s.subset == face; });
        Matrix block = slice.step_map(src.grade, j);
        if (rank_in_gamma % 2 == 0) block = block.scaled(-1);
        d.place(tgt->offset, src.offset, block);
      }
    }
    diffs.push_back(std::move(d));
  }
  k.chains = ChainComplex(slice.field(), std::move(dims), std::move(diffs));
  return k;
}

ChainComplex mapping_cone(const ChainComplex& b, const ChainComplex& c, const ChainMap& f) {
  if (!(b.field() == c.field())) throw ContractError("mapping cone across fields");
  const PrimeField& field = b.field();
  const int top = static_cast<int>(std::max(b.length(), c.length()));
  auto component = [&](int i) -> Matrix {
    if (i >= 0 && static_cast<std::size_t>(i) < f.components.size()) {
      const Matrix& m = f.components[i];
      if (m.rows() != c.dim(i) || m.cols() != b.dim(i))
        throw ContractError("chain map component " + std::to_string(i) + " has the wrong shape");
      return m;
    }
    return Matrix(field, c.dim(i), b.dim(i));
  };
  for (int i = 0; i <= top; ++i) component(i);
  for (int i = 1; i <= top; ++i)
    if (!(c.differential(i) * component(i) == component(i - 1) * b.differential(i))) throw NotChainMapError(i);

  const int length = static_cast<int>(std::max(b.length() + 1, c.length()));
  std::vector<std::size_t> dims;
  for (int i = 0; i < length; ++i) dims.push_back(b.dim(i - 1) + c.dim(i));
  std::vector<Matrix> diffs;
  for (int i = 1; i < length; ++i) {
    Matrix d(field, dims[i - 1], dims[i]);
    const std::size_t b_rows = b.dim(i - 2);
    const std::size_t b_cols = b.dim(i - 1);
    d.place(0, 0, b.differential(i - 1).scaled(-1));
    d.place(b_rows, 0, component(i - 1));
    d.place(b_rows, b_cols, c.differential(i));
    diffs.push_back(std::move(d));
  }
  if (dims.empty()) dims.push_back(0);
  return ChainComplex(field, std::move(dims), std::move(diffs));
}

KoszulComplex koszul_via_cones(const PersistenceModuleSlice& slice, const GradeVector& u,
                               const std::vector<std::size_t>& axis_order) {
  AxisMask variables = 0;
  for (std::size_t a : axis_order) {
    if (a >= slice.parameters()) throw ContractError("variable set is not a subset of [n]");
    if (variables & (1u << a)) throw ContractError("repeated axis in cone ordering");
    variables |= 1u << a;
  }
  check_variables(slice, variables);

  std::function<KoszulComplex(std::size_t, const GradeVector&)> build = [&](std::size_t t,
                                                                            const GradeVector& w) -> KoszulComplex {
    KoszulComplex k;
    k.grade = w;
    if (t == 1) {
      const std::size_t j = axis_order[0];
      const AxisMask mask = 1u << j;
      GradeVector below = w.minus(mask);
      k.variables = mask;
      k.layout = {{{0, w, slice.dim(w), 0}}, {{mask, below, slice.dim(below), 0}}};
      k.chains = ChainComplex(slice.field(), {slice.dim(w), slice.dim(below)}, {slice.step_map(below, j)});
      return k;
    }
    const std::size_t axis = axis_order[t - 1];
    const AxisMask added = 1u << axis;
    KoszulComplex lower = build(t - 1, w.minus(added));
    KoszulComplex upper = build(t - 1, w);

    ChainMap f;
    for (std::size_t i = 0; i < upper.layout.size(); ++i) {
      Matrix fi(slice.field(), total_dim(upper.layout[i]), total_dim(lower.layout[i]));
      for (std::size_t s = 0; s < upper.layout[i].size(); ++s) {
        const auto& src = lower.layout[i][s];
        const auto& dst = upper.layout[i][s];
        fi.place(dst.offset, src.offset, slice.step_map(src.grade, axis));
      }
      f.components.push_back(std::move(fi));
    }

    k.variables = upper.variables | added;
    k.chains = mapping_cone(lower.chains, upper.chains, f);
    if (lower.chains.is_acyclic() && upper.chains.is_acyclic() && !k.chains.is_acyclic())
      throw InvariantError("cone of acyclic Koszul complexes is not acyclic at (" + w.to_string() + ")");

    k.layout.resize(upper.layout.size() + 1);
    for (std::size_t i = 0; i < k.layout.size(); ++i) {
      auto& degree = k.layout[i];
      if (i >= 1)
        for (const auto& s : lower.layout[i - 1])
          degree.push_back({s.subset | added, w.minus(s.subset | added), s.dim, total_dim(degree)});
      if (i < upper.layout.size())
        for (const auto& s : upper.layout[i]) degree.push_back({s.subset, s.grade, s.dim, total_dim(degree)});
    }
    return k;
  };
  return build(axis_order.size(), u);
}

// Betti tables ------------------------------------------------------------

std::size_t BettiTable::xi(int q, int i, const GradeVector& u) const {
  if (q < 0 || i < 0 || static_cast<std::size_t>(i) > parameters) return 0;
  auto it = entries.find({q, u});
  return it == entries.end() ? 0 : it->second[static_cast<std::size_t>(i)];
}

GradeSet BettiTable::support(int q, int i) const {
  GradeSet out;
  for (const auto& [key, values] : entries)
    if (key.first == q && i >= 0 && static_cast<std::size_t>(i) < values.size() && values[i]) out.insert(key.second);
  return out;
}

BettiTable betti_tables(const OneCriticalFiltration& f, int qmax, std::optional<GradeVector> upper) {
  BettiTable table;
  table.parameters = f.parameters();
  table.modulus = f.complex().field().modulus();
  const GradeVector hi = upper.value_or(f.max_grade());
  const GradeVector lo(f.parameters(), -1);
  const AxisMask all = (AxisMask{1} << f.parameters()) - 1;
  const auto box = grade_box(GradeVector(f.parameters(), 0), hi);
  for (int q = 0; q <= qmax; ++q) {
    PersistenceModuleSlice slice(f, q, lo, hi);
    for (const auto& u : box) {
      auto dims = koszul_direct(slice, u, all).homology_dims();
      if (std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d != 0; }))
        table.entries.emplace(std::make_pair(q, u), std::move(dims));
    }
  }
  return table;
}

// One-parameter persistence ----------------------------------------------

std::vector<Bar> barcode_1param(const OneCriticalFiltration& f, int qmax) {
  if (f.parameters() != 1) throw ContractError("barcode_1param requires a 1-parameter filtration");
  const CellComplex& x = f.complex();
  const PrimeField& field = x.field();
  std::vector<CellIndex> order(x.size());
  for (CellIndex c = 0; c < x.size(); ++c) order[c] = c;
  std::sort(order.begin(), order.end(), [&](CellIndex a, CellIndex b) {
    return std::make_tuple(f.grade(a)[0], x.dim(a), a) < std::make_tuple(f.grade(b)[0], x.dim(b), b);
  });
  std::vector<std::size_t> position(x.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k;

  // columns in filtration order, entries keyed by row position
  std::vector<std::map<std::size_t, std::uint32_t>> columns(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    for (auto e : x.boundary(order[k])) columns[k][position[e.cell]] = e.coeff;

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_owner(order.size(), kNone);
  std::vector<char> paired(order.size(), 0);
  std::vector<Bar> bars;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto& col = columns[j];
    while (!col.empty()) {
      std::size_t low = col.rbegin()->first;
      std::size_t owner = pivot_owner[low];
      if (owner == kNone) break;
      const auto& other = columns[owner];
      std::uint32_t factor = field.div(col.rbegin()->second, other.rbegin()->second);
      for (auto [row, v] : other) {
        std::uint32_t updated = field.sub(col[row], field.mul(factor, v));
        if (updated)
          col[row] = updated;
        else
          col.erase(row);
      }
    }
    if (col.empty()) continue;
    std::size_t low = col.rbegin()->first;
    pivot_owner[low] = j;
    paired[low] = paired[j] = 1;
    int birth = f.grade(order[low])[0];
    int death = f.grade(order[j])[0];
    int degree = x.dim(order[low]);
    if (birth != death && degree <= qmax) bars.push_back({degree, birth, death});
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (paired[k] || !columns[k].empty()) continue;
    int degree = x.dim(order[k]);
    if (degree <= qmax) bars.push_back({degree, f.grade(order[k])[0], std::nullopt});
  }
  std::sort(bars.begin(), bars.end());
  return bars;
}

// Independent checks ------------------------------------------------------

std::optional<HilbertFailure> hilbert_check(const OneCriticalFiltration& f, int qmax, const BettiTable& table) {
  const CellComplex& x = f.complex();
  const auto box = grade_box(GradeVector(f.parameters(), 0), f.max_grade());
  for (const auto& u : box) {
    CellularChains chains = cellular_chains(x, f.sublevel(u));
    for (int q = 0; q <= qmax; ++q) {
      long long sum = 0;
      for (const auto& [key, values] : table.entries) {
        if (key.first != q || !precedes(key.second, u)) continue;
        for (std::size_t i = 0; i < values.size(); ++i)
          sum += (i % 2 ? -1LL : 1LL) * static_cast<long long>(values[i]);
      }
      std::size_t h = chains.chains.homology_dim(q);
      if (static_cast<long long>(h) != sum) return HilbertFailure{q, u, h, sum};
    }
  }
  return std::nullopt;
}

std::size_t persistent_rank(const OneCriticalFiltration& f, int q, const GradeVector& u, const GradeVector& v) {
  if (!precedes(u, v)) throw ContractError("persistent_rank requires u <= v");
  const CellComplex& x = f.complex();
  CellularChains cu = cellular_chains(x, f.sublevel(u));
  CellularChains cv = cellular_chains(x, f.sublevel(v));
  Matrix zu = nullspace_basis(cu.chains.differential(q));
  Matrix embedded(x.field(), cv.chains.dim(q), zu.cols());
  for (std::size_t r = 0; r < zu.rows(); ++r) {
    auto pos = cv.position(q, cu.basis[q][r]);
    if (!pos) throw InvariantError("sublevel sets are not nested");
    for (std::size_t c = 0; c < zu.cols(); ++c) embedded.at(*pos, c) = zu(r, c);
  }
  Matrix bv = cv.chains.differential(q + 1);
  return rank(hconcat(bv, embedded)) - rank(bv);
}

}  // namespace mpb
