#include "mpbetti/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mpbetti/errors.hpp"

namespace mpb {

CellComplex CellComplex::build(PrimeField field, std::vector<CellSpec> specs) {
  CellComplex x(field);
  for (const auto& s : specs)
    if (s.dim < 0) throw ContractError("cell '" + s.id + "' has negative dimension");
  std::sort(specs.begin(), specs.end(),
            [](const CellSpec& a, const CellSpec& b) { return std::tie(a.dim, a.id) < std::tie(b.dim, b.id); });

  const std::size_t n = specs.size();
  x.ids_.reserve(n);
  x.dims_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x.by_id_.emplace(specs[i].id, i).second) throw ContractError("duplicate cell id '" + specs[i].id + "'");
    x.ids_.push_back(specs[i].id);
    x.dims_.push_back(specs[i].dim);
  }
  if (n) {
    int top = specs.back().dim;
    x.dim_offsets_.assign(static_cast<std::size_t>(top) + 2, 0);
    for (std::size_t i = 0; i < n; ++i) ++x.dim_offsets_[static_cast<std::size_t>(specs[i].dim) + 1];
    std::partial_sum(x.dim_offsets_.begin(), x.dim_offsets_.end(), x.dim_offsets_.begin());
  }

  x.boundary_.resize(n);
  x.coboundary_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<CellIndex, std::uint32_t> faces;
    for (const auto& [face_id, coeff] : specs[i].boundary) {
      auto it = x.by_id_.find(face_id);
      if (it == x.by_id_.end())
        throw ContractError("cell '" + specs[i].id + "' references unknown cell '" + face_id + "'");
      auto& slot = faces[it->second];
      slot = field.add(slot, field.reduce(coeff));
    }
    for (auto [face, coeff] : faces) {
      if (!coeff) continue;
      x.boundary_[i].push_back({face, coeff});
      x.coboundary_[face].push_back({i, coeff});
    }
  }
  return x;
}

std::vector<CellIndex> CellComplex::cells_of_dim(int q) const {
  std::vector<CellIndex> out;
  if (q < 0 || q > top_dim()) return out;
  out.resize(dim_offsets_[q + 1] - dim_offsets_[q]);
  std::iota(out.begin(), out.end(), dim_offsets_[q]);
  return out;
}

std::size_t CellComplex::count_of_dim(int q) const {
  if (q < 0 || q > top_dim()) return 0;
  return dim_offsets_[q + 1] - dim_offsets_[q];
}

std::optional<CellIndex> CellComplex::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t CellComplex::incidence(CellIndex tau, CellIndex sigma) const {
  const auto& b = boundary_[tau];
  auto it = std::lower_bound(b.begin(), b.end(), sigma, [](const Incidence& e, CellIndex c) { return e.cell < c; });
  return (it != b.end() && it->cell == sigma) ? it->coeff : 0;
}

std::vector<CellSpec> CellComplex::specs() const {
  std::vector<CellSpec> out(size());
  for (CellIndex c = 0; c < size(); ++c) {
    out[c].id = ids_[c];
    out[c].dim = dims_[c];
    for (auto e : boundary_[c]) out[c].boundary.emplace_back(ids_[e.cell], e.coeff);
  }
  return out;
}

CellMask full_mask(const CellComplex& x) { return CellMask(x.size(), 1); }
CellMask empty_mask(const CellComplex& x) { return CellMask(x.size(), 0); }

bool is_face_closed(const CellComplex& x, const CellMask& mask) {
  if (mask.size() != x.size()) return false;
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (!mask[c]) continue;
    for (auto e : x.boundary(c))
      if (!mask[e.cell]) return false;
  }
  return true;
}

ComplexReport validate_complex(const CellComplex& x) {
  ComplexReport report;
  const PrimeField& f = x.field();
  for (CellIndex tau = 0; tau < x.size(); ++tau) {
    std::map<CellIndex, std::uint32_t> square;
    for (auto e : x.boundary(tau)) {
      if (x.dim(tau) != x.dim(e.cell) + 1)
        report.violations.push_back({ComplexViolation::Kind::DimensionGap, tau, e.cell});
      for (auto g : x.boundary(e.cell)) {
        auto& s = square[g.cell];
        s = f.add(s, f.mul(e.coeff, g.coeff));
      }
    }
    for (auto [sigma, v] : square)
      if (v) report.violations.push_back({ComplexViolation::Kind::NonzeroSquare, tau, sigma});
  }
  return report;
}

Matrix boundary_matrix(const CellComplex& x, int q) {
  const std::size_t rows = x.count_of_dim(q - 1);
  const std::size_t cols = x.count_of_dim(q);
  Matrix m(x.field(), rows, cols);
  if (!rows || !cols) return m;
  const CellIndex row0 = x.cells_of_dim(q - 1).front();
  const CellIndex col0 = x.cells_of_dim(q).front();
  for (std::size_t c = 0; c < cols; ++c)
    for (auto e : x.boundary(col0 + c))
      if (x.dim(e.cell) == q - 1) m.at(e.cell - row0, c) = e.coeff;
  return m;
}

// ChainComplex ------------------------------------------------------------

ChainComplex::ChainComplex(PrimeField field, std::vector<std::size_t> dims, std::vector<Matrix> differentials)
    : field_(field), dims_(std::move(dims)), diffs_(std::move(differentials)) {
  if (diffs_.size() + 1 != std::max<std::size_t>(dims_.size(), 1))
    throw ContractError("chain complex needs one differential per positive degree");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    const Matrix& d = diffs_[i];
    if (d.rows() != dims_[i] || d.cols() != dims_[i + 1] || !(d.field() == field_))
      throw ContractError("differential d_" + std::to_string(i + 1) + " has the wrong shape");
  }
  while (!dims_.empty() && dims_.back() == 0) {
    dims_.pop_back();
    if (!diffs_.empty()) diffs_.pop_back();
  }
}

std::size_t ChainComplex::dim(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= dims_.size()) return 0;
  return dims_[i];
}

Matrix ChainComplex::differential(int i) const {
  if (i >= 1 && static_cast<std::size_t>(i) < dims_.size()) return diffs_[i - 1];
  return Matrix(field_, dim(i - 1), dim(i));
}

bool ChainComplex::is_complex() const {
  for (int i = 2; i < static_cast<int>(dims_.size()); ++i)
    if (!(differential(i - 1) * differential(i)).is_zero()) return false;
  return true;
}

std::size_t ChainComplex::homology_dim(int i) const {
  std::size_t n = dim(i);
  if (!n) return 0;
  return n - rank(differential(i)) - rank(differential(i + 1));
}

bool ChainComplex::is_acyclic() const {
  for (int i = 0; i < static_cast<int>(dims_.size()); ++i)
    if (homology_dim(i)) return false;
  return true;
}

// Cellular chains ---------------------------------------------------------

std::optional<std::size_t> CellularChains::position(int q, CellIndex c) const {
  if (q < 0 || static_cast<std::size_t>(q) >= basis.size()) return std::nullopt;
  const auto& b = basis[q];
  auto it = std::lower_bound(b.begin(), b.end(), c);
  if (it == b.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - b.begin());
}

CellularChains relative_chains(const CellComplex& x, const CellMask& y, const CellMask& a) {
  if (y.size() != x.size() || a.size() != x.size()) throw ContractError("cell mask size mismatch");
  CellularChains out;
  const int top = x.top_dim();
  out.basis.resize(static_cast<std::size_t>(std::max(top + 1, 0)));
  for (CellIndex c = 0; c < x.size(); ++c)
    if (y[c] && !a[c]) out.basis[x.dim(c)].push_back(c);

  std::vector<std::size_t> dims(out.basis.size());
  for (std::size_t q = 0; q < dims.size(); ++q) dims[q] = out.basis[q].size();
  std::vector<Matrix> diffs;
  for (int q = 1; q <= top; ++q) {
    Matrix d(x.field(), dims[q - 1], dims[q]);
    for (std::size_t col = 0; col < dims[q]; ++col)
      for (auto e : x.boundary(out.basis[q][col])) {
        if (x.dim(e.cell) != q - 1) continue;
        if (auto row = out.position(q - 1, e.cell)) d.at(*row, col) = e.coeff;
      }
    diffs.push_back(std::move(d));
  }
  if (dims.empty()) dims.push_back(0);
  out.chains = ChainComplex(x.field(), std::move(dims), std::move(diffs));
  return out;
}

CellularChains cellular_chains(const CellComplex& x, const CellMask& y) {
  return relative_chains(x, y, empty_mask(x));
}

// Homology ----------------------------------------------------------------

HomologyBasis::HomologyBasis(const ChainComplex& c, int q) : q_(q) {
  const PrimeField& f = c.field();
  const std::size_t n = c.dim(q);
  Matrix cycles = nullspace_basis(c.differential(q));

  Matrix next = c.differential(q + 1);
  RowEchelon next_echelon(next);
  std::vector<Vector> bcols;
  for (auto col : next_echelon.pivot_columns()) bcols.push_back(next.column(col));
  boundaries_ = Matrix::from_columns(f, n, bcols);

  RowEchelon combined(hconcat(boundaries_, cycles));
  std::vector<Vector> reps;
  for (auto col : combined.pivot_columns())
    if (col >= boundaries_.cols()) reps.push_back(cycles.column(col - boundaries_.cols()));
  reps_ = Matrix::from_columns(f, n, reps);
  solver_ = std::make_shared<RowEchelon>(hconcat(boundaries_, reps_));
}

std::optional<Vector> HomologyBasis::coordinates(std::span<const std::uint32_t> z) const {
  auto x = solver_->solve(z);
  if (!x) return std::nullopt;
  return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundaries_.cols()), x->end());
}

HomologyBasis homology_basis(const ChainComplex& c, int q) { return HomologyBasis(c, q); }

Matrix induced_map(const CellularChains& source, const CellularChains& target, int q, const HomologyBasis& bs,
                   const HomologyBasis& bt) {
  const PrimeField& f = target.chains.field();
  Matrix out(f, bt.dim(), bs.dim());
  if (bs.dim() == 0) return out;
  const auto& src_cells = source.basis[q];
  std::vector<std::size_t> where(src_cells.size());
  for (std::size_t k = 0; k < src_cells.size(); ++k) {
    auto pos = target.position(q, src_cells[k]);
    if (!pos) throw ContractError("induced_map: source is not a subcomplex of the target");
    where[k] = *pos;
  }
  const std::size_t target_dim = target.chains.dim(q);
  for (std::size_t col = 0; col < bs.dim(); ++col) {
    Vector z(target_dim, 0);
    for (std::size_t k = 0; k < src_cells.size(); ++k) z[where[k]] = bs.cycle_reps()(k, col);
    auto coords = bt.coordinates(z);
    if (!coords) throw InvariantError("induced_map: representative image is not a cycle of the target");
    for (std::size_t r = 0; r < bt.dim(); ++r) out.at(r, col) = (*coords)[r];
  }
  return out;
}

std::size_t relative_homology_dim(const CellComplex& x, const CellMask& y, const CellMask& a, int q) {
  if (!is_face_closed(x, y)) throw ContractError("relative homology: Y is not face-closed");
  if (!is_face_closed(x, a)) throw ContractError("relative homology: A is not face-closed");
  for (CellIndex c = 0; c < x.size(); ++c)
    if (a[c] && !y[c]) throw ContractError("relative homology: A is not contained in Y");
  return relative_chains(x, y, a).chains.homology_dim(q);
}

std::size_t relative_homology_dim(const CellComplex& x, const CellMask& a, int q) {
  return relative_homology_dim(x, full_mask(x), a, q);
}

// Simplicial helpers ------------------------------------------------------

std::string simplex_id(const Simplex& s) {
  std::string out;
  switch (s.size()) {
    case 1: out = "v"; break;
    case 2: out = "e"; break;
    case 3: out = "t"; break;
    default: out = "s" + std::to_string(static_cast<int>(s.size()) - 1) + "_"; break;
  }
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "_" : "") + std::to_string(s[i]);
  return out;
}

std::vector<CellSpec> simplicial_specs(const std::vector<std::pair<std::string, Simplex>>& simplices) {
  std::map<Simplex, std::string> names;
  for (const auto& [id, s] : simplices) {
    if (s.empty()) throw ContractError("simplex '" + id + "' has no vertices");
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i - 1] >= s[i]) throw ContractError("simplex '" + id + "' vertex list is not strictly increasing");
    if (!names.emplace(s, id).second) throw ContractError("simplex '" + id + "' is listed twice");
  }
  std::vector<CellSpec> specs;
  specs.reserve(simplices.size());
  for (const auto& [id, s] : simplices) {
    CellSpec spec{id, static_cast<int>(s.size()) - 1, {}};
    if (s.size() > 1) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
        auto it = names.find(face);
        if (it == names.end()) throw ContractError("simplex '" + id + "' is missing a face");
        spec.boundary.emplace_back(it->second, (k % 2) ? -1 : 1);
      }
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<Simplex> close_under_faces(const std::vector<Simplex>& simplices) {
  std::set<Simplex> all;
  std::vector<Simplex> stack(simplices.begin(), simplices.end());
  while (!stack.empty()) {
    Simplex s = std::move(stack.back());
    stack.pop_back();
    if (s.empty() || !all.insert(s).second) continue;
    if (s.size() == 1) continue;
    for (std::size_t k = 0; k < s.size(); ++k) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
      stack.push_back(std::move(face));
    }
  }
  return {all.begin(), all.end()};
}

CellComplex simplicial_complex(PrimeField field, const std::vector<Simplex>& simplices) {
  std::vector<std::pair<std::string, Simplex>> named;
  for (auto& s : close_under_faces(simplices)) named.emplace_back(simplex_id(s), s);
  return CellComplex::build(field, simplicial_specs(named));
}

}  // namespace mpb
