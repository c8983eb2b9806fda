#include "mpbetti/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "mpbetti/errors.hpp"

namespace mpb {

namespace {

using Json = nlohmann::ordered_json;

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineContext {
 public:
  explicit LineContext(std::size_t line) : line_(line) {}

  [[noreturn]] void syntax(const std::string& message, std::size_t column) const {
    throw InputError(InputError::Kind::Syntax, message, line_, column);
  }
  [[noreturn]] void semantic(const std::string& message, std::size_t column = 0) const {
    throw InputError(InputError::Kind::Semantic, message, line_, column);
  }

  template <typename Int>
  Int integer(std::string_view text, std::size_t column, const char* what) const {
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
      syntax(std::string("malformed ") + what + " '" + std::string(text) + "'", column);
    return v;
  }

  template <typename Int>
  std::vector<Int> integer_list(std::string_view text, std::size_t column, const char* what) const {
    std::vector<Int> out;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = text.find(',', pos);
      std::string_view part = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      out.push_back(integer<Int>(part, column + pos, what));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct KeyValue {
  std::string_view key;
  std::string_view value;
  std::size_t column;
  std::size_t value_column;
};

KeyValue split_key_value(const LineContext& ctx, const Token& t) {
  std::size_t eq = t.text.find('=');
  if (eq == std::string_view::npos || eq == 0) ctx.syntax("expected key=value, got '" + std::string(t.text) + "'", t.column);
  return {t.text.substr(0, eq), t.text.substr(eq + 1), t.column, t.column + eq + 1};
}

// Parses the key=value tokens from `first` on, rejecting unknown and repeated keys.
std::map<std::string_view, KeyValue> key_values(const LineContext& ctx, const std::vector<Token>& tokens, std::size_t first,
                                                std::initializer_list<std::string_view> allowed) {
  std::map<std::string_view, KeyValue> out;
  for (std::size_t k = first; k < tokens.size(); ++k) {
    KeyValue kv = split_key_value(ctx, tokens[k]);
    if (std::find(allowed.begin(), allowed.end(), kv.key) == allowed.end())
      ctx.syntax("unknown key '" + std::string(kv.key) + "'", kv.column);
    if (!out.emplace(kv.key, kv).second) ctx.syntax("repeated key '" + std::string(kv.key) + "'", kv.column);
  }
  return out;
}

bool valid_id(std::string_view id) {
  return !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
           c == '-';
  });
}

struct Record {
  std::string id;
  int dim;
  GradeVector grade;
  Simplex verts;
  std::vector<std::pair<std::string, std::int64_t>> boundary;
  std::size_t line;
};

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

Json grade_json(const GradeVector& g) {
  Json a = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) a.push_back(g[i]);
  return a;
}

Json grade_set_json(const GradeSet& s) {
  Json a = Json::array();
  for (const auto& g : s) a.push_back(grade_json(g));
  return a;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FiltrationDocument parse_document(std::string_view text) {
  std::optional<std::size_t> parameters;
  std::optional<std::uint32_t> modulus;
  std::optional<ComplexKind> kind;
  std::optional<std::uint64_t> seed;
  bool have_format = false;
  std::vector<Record> records;
  std::unordered_map<std::string, std::size_t> record_of;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    LineContext ctx(line_no);

    std::size_t lead = line.find_first_not_of(" \t");
    if (lead != std::string_view::npos && line.substr(lead).starts_with("# seed=")) {
      std::string_view value = line.substr(lead + 7);
      while (!value.empty() && (value.back() == ' ' || value.back() == '\t' || value.back() == '\r')) value.remove_suffix(1);
      if (seed) ctx.syntax("repeated seed comment", lead + 1);
      seed = ctx.integer<std::uint64_t>(value, lead + 8, "seed");
      continue;
    }

    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& head = tokens[0];

    if (!have_format) {
      if (head.text != "format") ctx.syntax("document must start with 'format v1'", head.column);
      if (tokens.size() != 2 || tokens[1].text != "v1")
        ctx.syntax("unsupported format line; expected 'format v1'", tokens.size() > 1 ? tokens[1].column : head.column);
      have_format = true;
      continue;
    }
    if (!kind) {
      if (head.text != "params") ctx.syntax("expected 'params' line after the format line", head.column);
      auto kv = key_values(ctx, tokens, 1, {"n", "p", "kind"});
      for (std::string_view key : {"n", "p", "kind"})
        if (!kv.count(key)) ctx.syntax("params line is missing '" + std::string(key) + "'", head.column);
      const auto& n = kv.at("n");
      int nv = ctx.integer<int>(n.value, n.value_column, "parameter count");
      if (nv < 1 || nv > static_cast<int>(GradeVector::kMaxParameters))
        ctx.semantic("parameter count must lie in [1, 8]", n.value_column);
      parameters = static_cast<std::size_t>(nv);
      const auto& p = kv.at("p");
      auto pv = ctx.integer<std::uint64_t>(p.value, p.value_column, "modulus");
      if (pv > (std::uint64_t{1} << 31) || !is_prime(static_cast<std::uint32_t>(pv)))
        ctx.semantic("modulus " + std::string(p.value) + " is not a prime <= 2^31", p.value_column);
      modulus = static_cast<std::uint32_t>(pv);
      const auto& k = kv.at("kind");
      if (k.value == "simplicial")
        kind = ComplexKind::Simplicial;
      else if (k.value == "general")
        kind = ComplexKind::General;
      else
        ctx.syntax("kind must be 'simplicial' or 'general'", k.value_column);
      continue;
    }

    if (head.text != "cell") ctx.syntax("unknown record '" + std::string(head.text) + "'", head.column);
    if (tokens.size() < 2) ctx.syntax("cell record without an id", head.column + 4);
    const Token& id_token = tokens[1];
    if (!valid_id(id_token.text))
      ctx.syntax("invalid cell id '" + std::string(id_token.text) + "' (letters, digits, '_', '.', '-')", id_token.column);
    std::string id(id_token.text);
    if (record_of.count(id)) ctx.semantic("duplicate cell id '" + id + "'", id_token.column);

    const bool simplicial = *kind == ComplexKind::Simplicial;
    auto kv = simplicial ? key_values(ctx, tokens, 2, {"dim", "grade", "verts"})
                         : key_values(ctx, tokens, 2, {"dim", "grade", "bdry"});
    for (std::string_view key : {"dim", "grade"})
      if (!kv.count(key)) ctx.syntax("cell '" + id + "' is missing '" + std::string(key) + "'", id_token.column);

    Record r;
    r.id = id;
    r.line = line_no;
    const auto& dim = kv.at("dim");
    r.dim = ctx.integer<int>(dim.value, dim.value_column, "dimension");
    if (r.dim < 0) ctx.semantic("cell '" + id + "' has negative dimension", dim.value_column);

    const auto& grade = kv.at("grade");
    auto coords = ctx.integer_list<int>(grade.value, grade.value_column, "grade");
    if (coords.size() != *parameters)
      ctx.syntax("cell '" + id + "' grade has " + std::to_string(coords.size()) + " coordinates, expected " +
                     std::to_string(*parameters),
                 grade.value_column);
    r.grade = GradeVector::from_span(coords);
    if (!r.grade.in_domain()) ctx.semantic("cell '" + id + "' has a negative grade", grade.value_column);

    if (simplicial) {
      if (!kv.count("verts")) ctx.syntax("simplicial cell '" + id + "' is missing 'verts'", id_token.column);
      const auto& verts = kv.at("verts");
      r.verts = ctx.integer_list<int>(verts.value, verts.value_column, "vertex");
      if (r.verts.size() != static_cast<std::size_t>(r.dim) + 1)
        ctx.semantic("cell '" + id + "' of dimension " + std::to_string(r.dim) + " lists " +
                         std::to_string(r.verts.size()) + " vertices",
                     verts.value_column);
      for (std::size_t k = 0; k < r.verts.size(); ++k) {
        if (r.verts[k] < 0) ctx.semantic("cell '" + id + "' has a negative vertex label", verts.value_column);
        if (k && r.verts[k - 1] >= r.verts[k])
          ctx.semantic("cell '" + id + "' vertex list is not strictly increasing", verts.value_column);
      }
    } else if (kv.count("bdry")) {
      const auto& bdry = kv.at("bdry");
      std::size_t p0 = 0;
      while (true) {
        std::size_t comma = bdry.value.find(',', p0);
        std::string_view item =
            bdry.value.substr(p0, comma == std::string_view::npos ? std::string_view::npos : comma - p0);
        const std::size_t column = bdry.value_column + p0;
        std::size_t colon = item.rfind(':');
        if (colon == std::string_view::npos) ctx.syntax("boundary entry must read <id>:<coeff>", column);
        std::string face(item.substr(0, colon));
        if (!valid_id(face)) ctx.syntax("invalid face id '" + face + "'", column);
        auto coeff = ctx.integer<std::int64_t>(item.substr(colon + 1), column + colon + 1, "coefficient");
        if (!record_of.count(face)) ctx.semantic("cell '" + id + "' refers to undeclared face '" + face + "'", column);
        if (std::any_of(r.boundary.begin(), r.boundary.end(), [&](const auto& e) { return e.first == face; }))
          ctx.semantic("cell '" + id + "' lists face '" + face + "' twice", column);
        r.boundary.emplace_back(face, coeff);
        if (comma == std::string_view::npos) break;
        p0 = comma + 1;
      }
    }
    record_of.emplace(id, records.size());
    records.push_back(std::move(r));
  }

  const std::size_t last = line_no;
  if (!have_format) throw InputError(InputError::Kind::Syntax, "empty document; expected 'format v1'", last, 1);
  if (!kind) throw InputError(InputError::Kind::Syntax, "missing 'params' line", last, 1);

  const PrimeField field(*modulus);
  std::vector<CellSpec> specs;
  if (*kind == ComplexKind::Simplicial) {
    std::map<Simplex, std::size_t> by_simplex;
    for (std::size_t k = 0; k < records.size(); ++k)
      if (!by_simplex.emplace(records[k].verts, k).second)
        throw InputError(InputError::Kind::Semantic,
                         "cells '" + records[by_simplex[records[k].verts]].id + "' and '" + records[k].id +
                             "' span the same simplex",
                         records[k].line);
    std::vector<std::pair<std::string, Simplex>> named;
    for (const auto& r : records) {
      for (std::size_t k = 0; r.verts.size() > 1 && k < r.verts.size(); ++k) {
        Simplex face = r.verts;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
        if (!by_simplex.count(face))
          throw InputError(InputError::Kind::Semantic,
                           "simplex '" + r.id + "' is missing its face {" + join_ints(face) + "}", r.line);
      }
      named.emplace_back(r.id, r.verts);
    }
    specs = simplicial_specs(named);
  } else {
    for (const auto& r : records) specs.push_back({r.id, r.dim, r.boundary});
  }

  CellComplex complex = CellComplex::build(field, specs);
  auto record_of_id = [&](const std::string& id) -> const Record& { return records[record_of.at(id)]; };

  auto report = validate_complex(complex);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    std::string what = v.kind == ComplexViolation::Kind::DimensionGap ? "incidence between cells of non-adjacent dimensions"
                                                                       : "boundary of a boundary is nonzero";
    throw InputError(InputError::Kind::Semantic,
                     what + ": '" + complex.id(v.tau) + "' and '" + complex.id(v.sigma) + "'", record_of_id(complex.id(v.tau)).line);
  }

  std::vector<GradeVector> grades;
  std::vector<Simplex> simplices;
  for (CellIndex c = 0; c < complex.size(); ++c) {
    const Record& r = record_of_id(complex.id(c));
    grades.push_back(r.grade);
    if (*kind == ComplexKind::Simplicial) simplices.push_back(r.verts);
  }
  OneCriticalFiltration f(std::move(complex), std::move(grades), *parameters);
  auto order = validate_one_critical(f);
  if (!order.ok()) {
    auto [sigma, tau] = order.violations.front();
    const CellComplex& x = f.complex();
    throw InputError(InputError::Kind::Semantic,
                     "grade of '" + x.id(tau) + "' (" + f.grade(tau).to_string() + ") does not dominate its face '" +
                         x.id(sigma) + "' (" + f.grade(sigma).to_string() + ")",
                     record_of_id(x.id(tau)).line);
  }
  return {std::move(f), *kind, std::move(simplices), seed};
}

FiltrationDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(InputError::Kind::Syntax, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::string print_document(const FiltrationDocument& doc) {
  const OneCriticalFiltration& f = doc.filtration;
  const CellComplex& x = f.complex();
  std::ostringstream out;
  out << "format v1\n";
  if (doc.seed) out << "# seed=" << *doc.seed << "\n";
  out << "params n=" << f.parameters() << " p=" << x.field().modulus()
      << " kind=" << (doc.kind == ComplexKind::Simplicial ? "simplicial" : "general") << "\n";
  for (CellIndex c = 0; c < x.size(); ++c) {
    out << "cell " << x.id(c) << " dim=" << x.dim(c) << " grade=" << f.grade(c).to_string();
    if (doc.kind == ComplexKind::Simplicial) {
      out << " verts=" << join_ints(doc.simplices.at(c));
    } else if (!x.boundary(c).empty()) {
      out << " bdry=";
      bool first = true;
      for (auto e : x.boundary(c)) {
        out << (first ? "" : ",") << x.id(e.cell) << ":" << e.coeff;
        first = false;
      }
    }
    out << "\n";
  }
  return out.str();
}

bool structurally_equal(const FiltrationDocument& a, const FiltrationDocument& b) {
  const CellComplex& x = a.filtration.complex();
  const CellComplex& y = b.filtration.complex();
  if (a.kind != b.kind || a.simplices != b.simplices) return false;
  if (a.filtration.parameters() != b.filtration.parameters() || !(x.field() == y.field()) || x.size() != y.size())
    return false;
  for (CellIndex c = 0; c < x.size(); ++c) {
    if (x.id(c) != y.id(c) || x.dim(c) != y.dim(c) || a.filtration.grade(c) != b.filtration.grade(c)) return false;
    auto bx = x.boundary(c);
    auto by = y.boundary(c);
    if (bx.size() != by.size()) return false;
    for (std::size_t k = 0; k < bx.size(); ++k)
      if (bx[k].cell != by[k].cell || bx[k].coeff != by[k].coeff) return false;
  }
  return true;
}

FiltrationDocument lower_star(PrimeField field, const std::vector<Simplex>& simplices,
                              const std::map<int, GradeVector>& vertex_grades) {
  auto closed = close_under_faces(simplices);
  std::vector<std::pair<std::string, Simplex>> named;
  std::map<std::string, Simplex> by_id;
  for (const auto& s : closed) {
    named.emplace_back(simplex_id(s), s);
    by_id.emplace(simplex_id(s), s);
  }
  std::size_t n = vertex_grades.empty() ? 1 : vertex_grades.begin()->second.size();
  CellComplex x = CellComplex::build(field, simplicial_specs(named));
  std::vector<GradeVector> grades;
  std::vector<Simplex> vertex_lists;
  for (CellIndex c = 0; c < x.size(); ++c) {
    const Simplex& s = by_id.at(x.id(c));
    GradeVector g(n, 0);
    for (int v : s) {
      auto it = vertex_grades.find(v);
      if (it == vertex_grades.end()) throw ContractError("vertex " + std::to_string(v) + " has no grade");
      g = join(g, it->second);
    }
    grades.push_back(g);
    vertex_lists.push_back(s);
  }
  return {OneCriticalFiltration(std::move(x), std::move(grades), n), ComplexKind::Simplicial, std::move(vertex_lists),
          std::nullopt};
}

FiltrationDocument generate_random(const GeneratorParams& params) {
  if (params.parameters < 1 || params.parameters > GradeVector::kMaxParameters)
    throw ContractError("parameter count must lie in [1, 8]");
  if (params.grade_max < 0) throw ContractError("grade range must contain at least one value");
  for (double p : params.fill)
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("fill probabilities must lie in [0, 1]");

  std::mt19937_64 rng(params.seed);
  std::set<Simplex> present;
  std::vector<Simplex> layer;
  for (std::size_t v = 1; v <= params.vertices; ++v) layer.push_back({static_cast<int>(v)});
  present.insert(layer.begin(), layer.end());
  std::vector<Simplex> all = layer;

  for (int d = 1; d <= params.top_dim && !layer.empty(); ++d) {
    const double p = static_cast<std::size_t>(d - 1) < params.fill.size() ? params.fill[d - 1] : 0.0;
    std::vector<Simplex> next;
    for (const auto& s : layer)
      for (int v = s.back() + 1; v <= static_cast<int>(params.vertices); ++v) {
        Simplex t = s;
        t.push_back(v);
        bool facets = true;
        for (std::size_t k = 0; k + 1 < t.size() && facets; ++k) {
          Simplex face = t;
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(k));
          facets = present.count(face) > 0;
        }
        if (!facets) continue;
        if (unit(rng) < p) next.push_back(std::move(t));
      }
    present.insert(next.begin(), next.end());
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }

  std::map<int, GradeVector> grades;
  const auto range = static_cast<std::uint64_t>(params.grade_max) + 1;
  for (std::size_t v = 1; v <= params.vertices; ++v) {
    GradeVector g(params.parameters, 0);
    for (std::size_t i = 0; i < params.parameters; ++i) g[i] = static_cast<int>(rng() % range);
    grades.emplace(static_cast<int>(v), g);
  }
  FiltrationDocument doc = params.vertices == 0
                               ? FiltrationDocument{OneCriticalFiltration(CellComplex(PrimeField(params.modulus)), {},
                                                                          params.parameters),
                                                    ComplexKind::Simplicial, {}, std::nullopt}
                               : lower_star(PrimeField(params.modulus), all, grades);
  doc.seed = params.seed;
  return doc;
}

std::string betti_csv(const BettiTable& table) {
  std::ostringstream out;
  out << "q";
  for (std::size_t i = 1; i <= table.parameters; ++i) out << ",u" << i;
  out << ",i,xi\n";
  for (const auto& [key, values] : table.entries)
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values[i]) continue;
      out << key.first;
      for (std::size_t k = 0; k < key.second.size(); ++k) out << "," << key.second[k];
      out << "," << i << "," << values[i] << "\n";
    }
  return out.str();
}

std::uint64_t fixture_hash(const FiltrationDocument& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : print_document(doc)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string betti_json(const BettiTable& table, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> hash) {
  Json j;
  j["parameters"] = table.parameters;
  j["modulus"] = table.modulus;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  if (hash) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(*hash));
    j["fixture_hash"] = buf;
  }
  Json entries = Json::array();
  for (const auto& [key, values] : table.entries)
    entries.push_back({{"q", key.first}, {"grade", grade_json(key.second)}, {"xi", values}});
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string report_json(const SupportReport& report) {
  Json claims = Json::array();
  for (const auto& c : report.claims) {
    Json item{{"id", c.id}, {"q", c.q}, {"holds", c.holds}};
    if (c.counterexample) item["counterexample"] = grade_json(*c.counterexample);
    claims.push_back(std::move(item));
  }
  Json supports = Json::object();
  Json grades = Json::object();
  for (const auto& d : report.degrees) {
    Json per_i = Json::object();
    for (std::size_t i = 0; i < d.supports.size(); ++i) per_i["xi" + std::to_string(i)] = grade_set_json(d.supports[i]);
    supports[std::to_string(d.q)] = std::move(per_i);
    Json g{{"critical", grade_set_json(d.critical)}, {"critical_closure", grade_set_json(d.critical_closure)}};
    if (d.homological) g["homological"] = grade_set_json(*d.homological);
    if (d.homological_closure) g["homological_closure"] = grade_set_json(*d.homological_closure);
    grades[std::to_string(d.q)] = std::move(g);
  }
  Json j{{"claims", std::move(claims)},
         {"supports", std::move(supports)},
         {"grades", std::move(grades)},
         {"seed", report.seed ? Json(*report.seed) : Json(nullptr)},
         {"modulus", report.modulus}};
  return j.dump(2) + "\n";
}

std::string counterexample_bundle(const FiltrationDocument& doc, const DiscreteVectorField& v,
                                  const ClaimVerdict& claim) {
  const CellComplex& x = doc.filtration.complex();
  Json matching = Json::array();
  for (auto [s, t] : v.pairs) matching.push_back({x.id(s), x.id(t)});
  Json c{{"id", claim.id}, {"q", claim.q}};
  if (claim.counterexample) c["counterexample"] = grade_json(*claim.counterexample);
  Json j{{"claim", std::move(c)}, {"matching", std::move(matching)}, {"document", print_document(doc)}};
  return j.dump(2) + "\n";
}

}  // namespace mpb
