#include "mpbetti/critical.hpp"

#include <algorithm>

#include "mpbetti/errors.hpp"

namespace mpb {

namespace {

void require_bifiltration(const OneCriticalFiltration& f) {
  if (f.parameters() != 2) throw ContractError("requires n=2");
}

CellMask mask_union(CellMask a, const CellMask& b) {
  for (std::size_t c = 0; c < a.size(); ++c) a[c] = a[c] || b[c];
  return a;
}

GradeVector one_step_beyond(const OneCriticalFiltration& f) {
  GradeVector g = f.max_grade();
  for (std::size_t i = 0; i < g.size(); ++i) ++g[i];
  return g;
}

// First element of `a` missing from every set in `covers`.
std::optional<GradeVector> first_outside(const GradeSet& a, std::initializer_list<const GradeSet*> covers) {
  for (const auto& g : a) {
    bool covered = std::any_of(covers.begin(), covers.end(), [&](const GradeSet* s) { return s->count(g) > 0; });
    if (!covered) return g;
  }
  return std::nullopt;
}

void add_inclusion(SupportReport& report, const std::string& id, int q, const GradeSet& a,
                   std::initializer_list<const GradeSet*> covers) {
  auto bad = first_outside(a, covers);
  report.claims.push_back({id, q, !bad.has_value(), bad});
}

GradeSet merged(std::initializer_list<GradeSet> sets) {
  GradeSet out;
  for (const auto& s : sets) out.insert(s.begin(), s.end());
  return out;
}

std::size_t critical_count_below(const OneCriticalFiltration& morse, int q, const GradeVector& w) {
  if (!w.in_domain()) return 0;
  std::size_t count = 0;
  for (CellIndex c : morse.complex().cells_of_dim(q))
    if (precedes(morse.grade(c), w)) ++count;
  return count;
}

SupportReport empty_report(const OneCriticalFiltration& f) {
  SupportReport report;
  report.parameters = f.parameters();
  report.modulus = f.complex().field().modulus();
  return report;
}

}  // namespace

bool SupportReport::holds() const { return first_failure() == nullptr; }

const ClaimVerdict* SupportReport::first_failure() const {
  for (const auto& c : claims)
    if (!c.holds) return &c;
  return nullptr;
}

GradeSet critical_entrance_grades(const OneCriticalFiltration& morse, int q) {
  auto cells = morse.complex().cells_of_dim(q);
  return entrance_grades(morse, cells);
}

std::map<GradeVector, std::size_t> relative_critical_dims(const OneCriticalFiltration& f, int q,
                                                          std::optional<GradeVector> upper) {
  require_bifiltration(f);
  const CellComplex& x = f.complex();
  std::map<GradeVector, std::size_t> out;
  for (const auto& u : grade_box(GradeVector(2, 0), upper.value_or(f.max_grade()))) {
    CellMask below = mask_union(f.sublevel(u.minus(0b01)), f.sublevel(u.minus(0b10)));
    out[u] = relative_homology_dim(x, f.sublevel(u), below, q);
  }
  return out;
}

GradeSet homological_critical_grades(const OneCriticalFiltration& f, int q) {
  GradeSet out;
  for (const auto& [u, d] : relative_critical_dims(f, q))
    if (d) out.insert(u);
  return out;
}

SupportReport verify_support_theorem(const OneCriticalFiltration& f, const DiscreteVectorField& v, int qmax) {
  MorseComplexResult m = morse_complex(f, v);
  SupportReport report = empty_report(f);
  report.table = betti_tables(f, qmax, one_step_beyond(f));
  const int n = static_cast<int>(f.parameters());

  std::vector<GradeSet> closures;
  std::vector<GradeSet> grades;
  for (int q = 0; q <= qmax + 1; ++q) {
    grades.push_back(critical_entrance_grades(m.filtration, q));
    closures.push_back(lub_closure(grades.back()));
  }
  for (int q = 0; q <= qmax; ++q) {
    DegreeSupport d;
    d.q = q;
    for (int i = 0; i <= n; ++i) d.supports.push_back(report.table.support(q, i));
    d.critical = grades[q];
    d.critical_closure = closures[q];
    if (n == 2) {
      GradeSet c;
      for (const auto& [u, dim] : relative_critical_dims(f, q, one_step_beyond(f)))
        if (dim) c.insert(u);
      d.homological_closure = lub_closure(c);
      d.homological = std::move(c);
    }

    GradeSet all;
    for (const auto& s : d.supports) all.insert(s.begin(), s.end());
    add_inclusion(report, "support-union", q, all, {&closures[q], &closures[q + 1]});
    add_inclusion(report, "support-first", q, d.supports.front(), {&closures[q]});
    add_inclusion(report, "support-last", q, d.supports.back(), {&closures[q + 1]});
    report.degrees.push_back(std::move(d));
  }
  return report;
}

LocalMapsVerdict verify_local_maps(const OneCriticalFiltration& f, const DiscreteVectorField& v, int q,
                                   const GradeVector& u) {
  if (u.size() != f.parameters() || !u.in_domain()) throw ContractError("grade does not lie in N^n");
  MorseComplexResult m = morse_complex(f, v);
  LocalMapsVerdict verdict;
  if (lub_closure(critical_entrance_grades(m.filtration, q)).count(u)) return verdict;

  const std::size_t n = f.parameters();
  const AxisMask all = (AxisMask{1} << n) - 1;
  auto faces_avoiding = [&](std::size_t j) {
    std::vector<AxisMask> out;
    for (AxisMask alpha = 0; alpha <= all; ++alpha)
      if (!(alpha & (1u << j))) out.push_back(alpha);
    return out;
  };

  for (std::size_t j = 0; j < n && !verdict.direction; ++j) {
    bool stable = true;
    for (AxisMask alpha : faces_avoiding(j)) {
      GradeVector w = u.minus(alpha);
      if (critical_count_below(m.filtration, q, w) != critical_count_below(m.filtration, q, w.minus(1u << j)))
        stable = false;
    }
    if (stable) verdict.direction = j;
  }
  if (!verdict.direction) {
    verdict.status = LocalMapsVerdict::Status::Violated;
    verdict.counterexample = u;
    return verdict;
  }

  const std::size_t j = *verdict.direction;
  const GradeVector lo(n, -1);
  PersistenceModuleSlice top(f, q, lo, u);
  std::optional<PersistenceModuleSlice> below;
  if (q >= 1) below.emplace(f, q - 1, lo, u);
  for (AxisMask alpha : faces_avoiding(j)) {
    GradeVector w = u.minus(alpha);
    GradeVector src = w.minus(1u << j);
    bool onto = rank(top.step_map(src, j)) == top.dim(w);
    bool one_to_one = !below || rank(below->step_map(src, j)) == below->dim(src);
    if (!onto || !one_to_one) {
      verdict.status = LocalMapsVerdict::Status::Violated;
      verdict.counterexample = w;
      return verdict;
    }
  }
  verdict.status = LocalMapsVerdict::Status::Holds;
  return verdict;
}

SupportReport verify_bifiltration_bounds(const OneCriticalFiltration& f, const DiscreteVectorField& v, int qmax) {
  require_bifiltration(f);
  MorseComplexResult m = morse_complex(f, v);
  SupportReport report = empty_report(f);
  const GradeVector upper = one_step_beyond(f);
  report.table = betti_tables(f, qmax + 1, upper);
  const BettiTable& t = report.table;

  std::vector<std::map<GradeVector, std::size_t>> rel;
  std::vector<GradeSet> hc, hc_closure;
  for (int q = 0; q <= qmax + 1; ++q) {
    rel.push_back(relative_critical_dims(f, q, upper));
    GradeSet c;
    for (const auto& [u, d] : rel.back())
      if (d) c.insert(u);
    hc_closure.push_back(lub_closure(c));
    hc.push_back(std::move(c));
  }

  GradeSet union_critical, union_support, union_closure = hc_closure[qmax + 1];
  for (int q = 0; q <= qmax; ++q) {
    DegreeSupport d;
    d.q = q;
    for (int i = 0; i <= 2; ++i) d.supports.push_back(t.support(q, i));
    d.critical = critical_entrance_grades(m.filtration, q);
    d.critical_closure = lub_closure(d.critical);
    d.homological = hc[q];
    d.homological_closure = hc_closure[q];

    GradeSet low = merged({t.support(q, 0), t.support(q - 1, 1), t.support(q - 1, 2)});
    add_inclusion(report, "low-degree-support", q, low, {&hc_closure[q]});
    add_inclusion(report, "top-betti-support", q, t.support(q - 1, 2), {&hc_closure[q]});
    GradeSet degree_support = merged({d.supports[0], d.supports[1], d.supports[2]});
    add_inclusion(report, "degree-support", q, degree_support, {&hc_closure[q], &hc_closure[q + 1]});

    std::optional<GradeVector> bad;
    for (const auto& [u, dim] : rel[q]) {
      long long first = static_cast<long long>(t.xi(q, 0, u) + t.xi(q - 1, 1, u)) - static_cast<long long>(t.xi(q - 1, 2, u));
      long long last = static_cast<long long>(t.xi(q, 0, u) + t.xi(q - 1, 1, u) + t.xi(q - 2, 2, u));
      long long mid = static_cast<long long>(dim);
      if (!(first <= mid && mid <= last)) {
        bad = u;
        break;
      }
    }
    report.claims.push_back({"sandwich", q, !bad.has_value(), bad});
    add_inclusion(report, "critical-subset", q, hc[q], {&d.critical});
    add_inclusion(report, "closure-monotone", q, hc_closure[q], {&d.critical_closure});

    union_critical.insert(hc[q].begin(), hc[q].end());
    union_support.insert(degree_support.begin(), degree_support.end());
    union_closure.insert(hc_closure[q].begin(), hc_closure[q].end());
    report.degrees.push_back(std::move(d));
  }
  add_inclusion(report, "union-lower", qmax, union_critical, {&union_support});
  add_inclusion(report, "union-upper", qmax, union_support, {&union_closure});
  return report;
}

SesVerdict verify_ses_dims(const OneCriticalFiltration& f, const GradeVector& v, int q, std::size_t j) {
  require_bifiltration(f);
  if (j > 1) throw ContractError("axis must be 0 or 1");
  const CellComplex& x = f.complex();
  const AxisMask ej = 1u << j;
  const AxisMask el = 1u << (1 - j);
  CellMask top = f.sublevel(v);
  CellMask side = f.sublevel(v.minus(el));
  CellMask corner = f.sublevel(v.minus(0b11));
  CellMask both = mask_union(f.sublevel(v.minus(0b01)), f.sublevel(v.minus(0b10)));
  CellMask along = f.sublevel(v.minus(ej));

  SesVerdict verdict;
  std::size_t sub = relative_chains(x, side, corner).chains.dim(q);
  std::size_t quotient = relative_chains(x, top, both).chains.dim(q);
  std::size_t middle = relative_chains(x, top, along).chains.dim(q);
  verdict.dims_hold = sub + quotient == middle;

  if (relative_homology_dim(x, top, both, q) == 0 && relative_homology_dim(x, top, along, q) != 0)
    verdict.exactness_holds = relative_homology_dim(x, side, corner, q) != 0;
  return verdict;
}

}  // namespace mpb
