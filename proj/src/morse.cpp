#include "mpbetti/morse.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "mpbetti/errors.hpp"

namespace mpb {

namespace {

constexpr std::size_t kUnpaired = static_cast<std::size_t>(-1);

// pair index by source cell
std::vector<std::size_t> source_index(const CellComplex& x, const DiscreteVectorField& v) {
  std::vector<std::size_t> by_source(x.size(), kUnpaired);
  for (std::size_t i = 0; i < v.pairs.size(); ++i) by_source[v.pairs[i].first] = i;
  return by_source;
}

// Successors of a pair (sigma, tau) in the V-path graph.
template <typename Visit>
void for_each_successor(const CellComplex& x, const std::vector<std::size_t>& by_source, CellIndex sigma,
                        CellIndex tau, Visit&& visit) {
  for (auto e : x.boundary(tau)) {
    if (e.cell == sigma) continue;
    std::size_t k = by_source[e.cell];
    if (k != kUnpaired) visit(k);
  }
}

// Returns a cycle of pair indices if the graph has one.
std::optional<std::vector<std::size_t>> find_cycle(const std::vector<std::vector<std::size_t>>& graph) {
  enum : char { White, Grey, Black };
  std::vector<char> color(graph.size(), White);
  std::vector<std::size_t> parent(graph.size(), kUnpaired);
  for (std::size_t root = 0; root < graph.size(); ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < graph[node].size()) {
        std::size_t succ = graph[node][next++];
        if (color[succ] == Grey) {
          std::vector<std::size_t> cycle{succ};
          for (std::size_t cur = node; cur != succ; cur = parent[cur]) cycle.push_back(cur);
          std::reverse(cycle.begin() + 1, cycle.end());
          return cycle;
        }
        if (color[succ] == White) {
          color[succ] = Grey;
          parent[succ] = node;
          stack.emplace_back(succ, 0);
        }
      } else {
        color[node] = Black;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CellPartition partition_cells(const CellComplex& x, const DiscreteVectorField& v) {
  std::vector<char> role(x.size(), 0);
  for (auto [s, t] : v.pairs) {
    role[s] = 1;
    role[t] = 2;
  }
  CellPartition p;
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (role[c] == 0) p.critical.push_back(c);
    if (role[c] == 1) p.sources.push_back(c);
    if (role[c] == 2) p.targets.push_back(c);
  }
  return p;
}

std::vector<std::vector<std::size_t>> vpath_graph(const CellComplex& x, const DiscreteVectorField& v) {
  auto by_source = source_index(x, v);
  std::vector<std::vector<std::size_t>> graph(v.pairs.size());
  for (std::size_t i = 0; i < v.pairs.size(); ++i)
    for_each_successor(x, by_source, v.pairs[i].first, v.pairs[i].second,
                       [&](std::size_t k) { graph[i].push_back(k); });
  return graph;
}

DvfReport validate_dvf(const CellComplex& x, const DiscreteVectorField& v) {
  DvfReport report;
  std::vector<char> used(x.size(), 0);
  for (std::size_t i = 0; i < v.pairs.size(); ++i) {
    auto [s, t] = v.pairs[i];
    if (s >= x.size() || t >= x.size() || x.incidence(t, s) == 0 || x.dim(t) != x.dim(s) + 1) {
      report.violations.push_back({DvfViolation::Kind::NotCoveringPair, i, {}});
      continue;
    }
    for (CellIndex c : {s, t}) {
      if (used[c]) report.violations.push_back({DvfViolation::Kind::RepeatedCell, i, {c}});
      used[c] = 1;
    }
  }
  if (!report.ok()) return report;

  if (auto cycle = find_cycle(vpath_graph(x, v))) {
    DvfViolation bad{DvfViolation::Kind::ClosedPath, cycle->front(), {}};
    for (std::size_t k : *cycle) {
      bad.path.push_back(v.pairs[k].first);
      bad.path.push_back(v.pairs[k].second);
    }
    bad.path.push_back(v.pairs[cycle->front()].first);
    report.violations.push_back(std::move(bad));
  }
  return report;
}

ConsistencyReport check_consistency(const OneCriticalFiltration& f, const DiscreteVectorField& v) {
  ConsistencyReport report;
  for (std::size_t i = 0; i < v.pairs.size(); ++i)
    if (f.grade(v.pairs[i].first) != f.grade(v.pairs[i].second)) report.violating_pairs.push_back(i);
  return report;
}

DiscreteVectorField build_matching(const OneCriticalFiltration& f) {
  const CellComplex& x = f.complex();
  std::map<GradeVector, std::vector<CellIndex>> classes;
  for (CellIndex c = 0; c < x.size(); ++c) classes[f.grade(c)].push_back(c);

  DiscreteVectorField v;
  std::vector<char> matched(x.size(), 0);
  std::vector<std::size_t> by_source(x.size(), kUnpaired);

  // True if the pair (sigma, tau) would close a V-path through itself.
  auto closes_cycle = [&](CellIndex sigma, CellIndex tau) {
    std::vector<char> seen(v.pairs.size(), 0);
    std::vector<std::size_t> stack;
    bool hit = false;
    auto push = [&](std::size_t k) {
      if (!seen[k]) {
        seen[k] = 1;
        stack.push_back(k);
      }
    };
    for_each_successor(x, by_source, sigma, tau, push);
    while (!stack.empty() && !hit) {
      std::size_t k = stack.back();
      stack.pop_back();
      auto [sk, tk] = v.pairs[k];
      // an arc k -> new pair closes the path
      if (sk != sigma && x.incidence(tk, sigma) != 0) hit = true;
      for_each_successor(x, by_source, sk, tk, push);
    }
    return hit;
  };

  for (const auto& [grade, cells] : classes) {
    for (CellIndex sigma : cells) {
      if (matched[sigma]) continue;
      for (auto e : x.coboundary(sigma)) {
        CellIndex tau = e.cell;
        if (matched[tau] || f.grade(tau) != grade || x.dim(tau) != x.dim(sigma) + 1) continue;
        if (closes_cycle(sigma, tau)) continue;
        by_source[sigma] = v.pairs.size();
        v.pairs.emplace_back(sigma, tau);
        matched[sigma] = matched[tau] = 1;
        break;
      }
    }
  }
  return v;
}

MorseComplexResult morse_complex(const OneCriticalFiltration& f, const DiscreteVectorField& v, MorseOptions options) {
  const CellComplex& x = f.complex();
  if (!validate_dvf(x, v).ok()) throw ContractError("morse_complex: vector field is not an acyclic matching");
  if (!check_consistency(f, v).ok()) throw ContractError("morse_complex: vector field is not consistent");
  const PrimeField& field = x.field();

  std::vector<std::map<CellIndex, std::uint32_t>> bd(x.size()), cobd(x.size());
  for (CellIndex c = 0; c < x.size(); ++c)
    for (auto e : x.boundary(c)) {
      bd[c][e.cell] = e.coeff;
      cobd[e.cell][c] = e.coeff;
    }
  auto set_incidence = [&](CellIndex t, CellIndex s, std::uint32_t value) {
    if (value) {
      bd[t][s] = value;
      cobd[s][t] = value;
    } else {
      bd[t].erase(s);
      cobd[s].erase(t);
    }
  };

  // Post-order of the V-path graph: every pair comes after all pairs it reaches.
  auto graph = vpath_graph(x, v);
  std::vector<std::size_t> order;
  std::vector<char> done(graph.size(), 0);
  for (std::size_t root = 0; root < graph.size(); ++root) {
    if (done[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    done[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < graph[node].size()) {
        std::size_t succ = graph[node][next++];
        if (!done[succ]) {
          done[succ] = 1;
          stack.emplace_back(succ, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }

  std::vector<char> alive(x.size(), 1);
  for (std::size_t k : order) {
    auto [sigma, tau] = v.pairs[k];
    auto it = bd[tau].find(sigma);
    if (it == bd[tau].end()) throw InvariantError("cancellation of a pair with vanishing incidence");
    const std::uint32_t pivot_inv = field.inv(it->second);

    std::vector<std::pair<CellIndex, std::uint32_t>> cofaces(cobd[sigma].begin(), cobd[sigma].end());
    std::vector<std::pair<CellIndex, std::uint32_t>> faces(bd[tau].begin(), bd[tau].end());
    for (auto [t, a] : cofaces) {
      if (t == tau) continue;
      std::uint32_t scale = field.mul(a, pivot_inv);
      for (auto [s, b] : faces) {
        if (s == sigma) continue;
        auto cur = bd[t].find(s);
        std::uint32_t old = cur == bd[t].end() ? 0 : cur->second;
        set_incidence(t, s, field.sub(old, field.mul(scale, b)));
      }
    }
    for (CellIndex c : {sigma, tau}) {
      for (auto [s, _] : std::vector<std::pair<CellIndex, std::uint32_t>>(bd[c].begin(), bd[c].end()))
        set_incidence(c, s, 0);
      for (auto [t, _] : std::vector<std::pair<CellIndex, std::uint32_t>>(cobd[c].begin(), cobd[c].end()))
        set_incidence(t, c, 0);
      alive[c] = 0;
    }

    if (options.check_each_step) {
      for (CellIndex t = 0; t < x.size(); ++t) {
        if (!alive[t]) continue;
        std::map<CellIndex, std::uint32_t> square;
        for (auto [s, a] : bd[t])
          for (auto [r, b] : bd[s]) square[r] = field.add(square[r], field.mul(a, b));
        for (auto [r, val] : square)
          if (val) throw InvariantError("Morse differential does not square to zero after a cancellation");
      }
    }
  }

  std::vector<CellSpec> specs;
  std::vector<GradeVector> grades;
  std::vector<CellIndex> origin;
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (!alive[c]) continue;
    CellSpec spec{x.id(c), x.dim(c), {}};
    for (auto [s, coeff] : bd[c]) spec.boundary.emplace_back(x.id(s), coeff);
    specs.push_back(std::move(spec));
    origin.push_back(c);
  }
  CellComplex morse = CellComplex::build(field, specs);
  // build() keeps the (dim, id) order, which matches the original index order.
  grades.reserve(origin.size());
  for (CellIndex c : origin) grades.push_back(f.grade(c));
  return {OneCriticalFiltration(std::move(morse), std::move(grades), f.parameters()), std::move(origin)};
}

}  // namespace mpb
