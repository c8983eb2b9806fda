#include "mpbetti/filtration.hpp"

#include <algorithm>
#include <charconv>

#include "mpbetti/errors.hpp"

namespace mpb {

GradeVector::GradeVector(std::size_t n, int value) {
  if (n > kMaxParameters) throw ContractError("at most 8 parameters are supported");
  n_ = static_cast<std::uint8_t>(n);
  std::fill_n(coords_.begin(), n, value);
}

GradeVector::GradeVector(std::initializer_list<int> coords) : GradeVector(coords.size()) {
  std::copy(coords.begin(), coords.end(), coords_.begin());
}

GradeVector GradeVector::from_span(std::span<const int> coords) {
  GradeVector g(coords.size());
  std::copy(coords.begin(), coords.end(), g.coords_.begin());
  return g;
}

GradeVector GradeVector::parse(std::string_view text) {
  std::vector<int> coords;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw ContractError("malformed grade '" + std::string(text) + "'");
    coords.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (coords.size() > kMaxParameters) throw ContractError("at most 8 parameters are supported");
  return from_span(coords);
}

bool GradeVector::in_domain() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (coords_[i] < 0) return false;
  return true;
}

GradeVector GradeVector::minus(AxisMask alpha) const {
  GradeVector g = *this;
  for (std::size_t i = 0; i < n_; ++i)
    if (alpha & (1u << i)) --g.coords_[i];
  return g;
}

GradeVector GradeVector::plus_axis(std::size_t axis, int delta) const {
  GradeVector g = *this;
  g.coords_[axis] += delta;
  return g;
}

std::string GradeVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) out += (i ? "," : "") + std::to_string(coords_[i]);
  return out;
}

bool precedes(const GradeVector& u, const GradeVector& v) {
  if (u.size() != v.size()) throw ContractError("comparing grades of different length");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > v[i]) return false;
  return true;
}

GradeVector meet(const GradeVector& u, const GradeVector& v) {
  if (u.size() != v.size()) throw ContractError("meet of grades of different length");
  GradeVector g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = std::min(u[i], v[i]);
  return g;
}

GradeVector join(const GradeVector& u, const GradeVector& v) {
  if (u.size() != v.size()) throw ContractError("join of grades of different length");
  GradeVector g(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = std::max(u[i], v[i]);
  return g;
}

std::vector<GradeVector> grade_box(const GradeVector& lo, const GradeVector& hi) {
  std::vector<GradeVector> out;
  if (!precedes(lo, hi)) return out;
  GradeVector cur = lo;
  const std::size_t n = lo.size();
  while (true) {
    out.push_back(cur);
    std::size_t axis = n;
    while (axis > 0) {
      --axis;
      if (cur[axis] < hi[axis]) {
        ++cur[axis];
        break;
      }
      cur[axis] = lo[axis];
      if (axis == 0) return out;
    }
    if (n == 0) return out;
  }
}

OneCriticalFiltration::OneCriticalFiltration(CellComplex complex, std::vector<GradeVector> grades,
                                             std::size_t parameters)
    : complex_(std::move(complex)), grades_(std::move(grades)), n_(parameters) {
  if (grades_.size() != complex_.size())
    throw ContractError("every cell needs exactly one entrance grade (" + std::to_string(grades_.size()) + " grades for " +
                        std::to_string(complex_.size()) + " cells)");
  if (n_ == 0) n_ = grades_.empty() ? 1 : grades_.front().size();
  if (n_ < 1 || n_ > GradeVector::kMaxParameters) throw ContractError("parameter count must lie in [1, 8]");
  for (CellIndex c = 0; c < grades_.size(); ++c) {
    if (grades_[c].size() != n_) throw ContractError("cell '" + complex_.id(c) + "' has a grade of the wrong length");
    if (!grades_[c].in_domain()) throw ContractError("cell '" + complex_.id(c) + "' has a negative grade");
  }
}

GradeVector OneCriticalFiltration::max_grade() const {
  GradeVector g(n_, 0);
  for (const auto& h : grades_) g = join(g, h);
  return g;
}

CellMask OneCriticalFiltration::sublevel(const GradeVector& u) const {
  CellMask mask(grades_.size(), 0);
  if (!u.in_domain()) return mask;
  for (CellIndex c = 0; c < grades_.size(); ++c) mask[c] = precedes(grades_[c], u) ? 1 : 0;
  return mask;
}

FiltrationReport validate_one_critical(const OneCriticalFiltration& f) {
  FiltrationReport report;
  const CellComplex& x = f.complex();
  for (CellIndex tau = 0; tau < x.size(); ++tau)
    for (auto e : x.boundary(tau))
      if (!precedes(f.grade(e.cell), f.grade(tau))) report.violations.emplace_back(e.cell, tau);
  return report;
}

std::optional<CellIndex> meet_intersection_check(const OneCriticalFiltration& f,
                                                 std::span<const GradeVector> grades) {
  if (grades.empty()) return std::nullopt;
  CellMask inter = f.sublevel(grades[0]);
  GradeVector w = grades[0];
  for (std::size_t k = 1; k < grades.size(); ++k) {
    CellMask m = f.sublevel(grades[k]);
    for (std::size_t c = 0; c < inter.size(); ++c) inter[c] = inter[c] && m[c];
    w = meet(w, grades[k]);
  }
  CellMask at_meet = f.sublevel(w);
  for (CellIndex c = 0; c < inter.size(); ++c)
    if (static_cast<bool>(inter[c]) != static_cast<bool>(at_meet[c])) return c;
  return std::nullopt;
}

GradeSet entrance_grades(const OneCriticalFiltration& f, std::span<const CellIndex> cells) {
  GradeSet out;
  for (CellIndex c : cells) {
    if (c >= f.complex().size()) throw ContractError("unknown cell index " + std::to_string(c));
    out.insert(f.grade(c));
  }
  return out;
}

GradeSet lub_closure(const GradeSet& g) {
  GradeSet closure = g;
  std::vector<GradeVector> frontier(g.begin(), g.end());
  while (!frontier.empty()) {
    std::vector<GradeVector> fresh;
    std::vector<GradeVector> current(closure.begin(), closure.end());
    for (const auto& a : frontier)
      for (const auto& b : current) {
        GradeVector j = join(a, b);
        if (closure.insert(j).second) fresh.push_back(j);
      }
    frontier = std::move(fresh);
  }
  return closure;
}

}  // namespace mpb
