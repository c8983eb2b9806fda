#include "mpbetti/cli.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpbetti/critical.hpp"
#include "mpbetti/errors.hpp"
#include "mpbetti/io.hpp"

namespace mpb {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError(InputError::Kind::Semantic, "cannot write '" + path + "'");
  f << content;
}

int default_qmax(const FiltrationDocument& doc) { return std::max(doc.filtration.complex().top_dim(), 0); }

void print_claims(std::ostream& out, const std::string& label, const SupportReport& report) {
  for (const auto& c : report.claims) {
    out << label << " " << c.id << " q=" << c.q << " " << (c.holds ? "holds" : "VIOLATED");
    if (c.counterexample) out << " at (" << c.counterexample->to_string() << ")";
    out << "\n";
  }
}

struct Options {
  std::string file;
  int qmax = -1;
  std::string json_path;
  std::string csv_path;
  bool csv = false;
  std::string grade;
  std::string theorem = "all";
  std::uint64_t seed = 0;
  std::size_t vertices = 8;
  std::size_t parameters = 2;
  int top_dim = 2;
  std::vector<double> fill{0.5, 0.3};
  int grade_max = 3;
  std::uint32_t modulus = 2;
  std::string output;
};

int cmd_betti(const Options& o, std::ostream& out) {
  FiltrationDocument doc = load_document(o.file);
  BettiTable table = betti_tables(doc.filtration, o.qmax >= 0 ? o.qmax : default_qmax(doc));
  std::string csv = betti_csv(table);
  out << csv;
  if (!o.csv_path.empty()) write_file(o.csv_path, csv);
  if (!o.json_path.empty()) write_file(o.json_path, betti_json(table, doc.seed, fixture_hash(doc)));
  return kExitOk;
}

int cmd_morse(const Options& o, std::ostream& out) {
  FiltrationDocument doc = load_document(o.file);
  DiscreteVectorField v = build_matching(doc.filtration);
  MorseComplexResult m = morse_complex(doc.filtration, v);
  const OneCriticalFiltration& mf = m.filtration;
  const CellComplex& mc = m.morse();
  if (o.csv) {
    std::map<std::pair<int, GradeVector>, std::size_t> census;
    for (CellIndex c = 0; c < mc.size(); ++c) ++census[{mc.dim(c), mf.grade(c)}];
    out << "q";
    for (std::size_t i = 1; i <= mf.parameters(); ++i) out << ",u" << i;
    out << ",count\n";
    for (const auto& [key, count] : census) {
      out << key.first;
      for (std::size_t i = 0; i < key.second.size(); ++i) out << "," << key.second[i];
      out << "," << count << "\n";
    }
    return kExitOk;
  }
  out << "# cells " << doc.filtration.complex().size() << " pairs " << v.pairs.size() << " critical " << mc.size()
      << "\n";
  for (int q = 0; q <= mc.top_dim(); ++q) out << "# critical q=" << q << " count=" << mc.count_of_dim(q) << "\n";
  out << print_document({mf, ComplexKind::General, {}, std::nullopt});
  return kExitOk;
}

int cmd_homology(const Options& o, std::ostream& out) {
  FiltrationDocument doc = load_document(o.file);
  GradeVector u;
  try {
    u = GradeVector::parse(o.grade);
  } catch (const ContractError& e) {
    throw InputError(InputError::Kind::Syntax, e.what());
  }
  if (u.size() != doc.filtration.parameters())
    throw InputError(InputError::Kind::Semantic, "grade has " + std::to_string(u.size()) + " coordinates, expected " +
                                                     std::to_string(doc.filtration.parameters()));
  CellularChains c = cellular_chains(doc.filtration.complex(), doc.filtration.sublevel(u));
  for (int q = 0; q <= default_qmax(doc); ++q) out << "q=" << q << " dim=" << c.chains.homology_dim(q) << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  FiltrationDocument doc = load_document(o.file);
  const OneCriticalFiltration& f = doc.filtration;
  const int qmax = o.qmax >= 0 ? o.qmax : default_qmax(doc);
  const bool support = o.theorem == "support" || o.theorem == "all";
  bool bounds = o.theorem == "bounds" || o.theorem == "all";
  if (o.theorem == "bounds" && f.parameters() != 2)
    throw InputError(InputError::Kind::Semantic, "bounds require a 2-parameter filtration");
  if (bounds && f.parameters() != 2) {
    out << "bounds skipped: n=" << f.parameters() << "\n";
    bounds = false;
  }

  struct Run {
    std::string label;
    DiscreteVectorField v;
    SupportReport report;
  };
  std::vector<Run> runs;
  DiscreteVectorField greedy = build_matching(f);
  if (support) {
    runs.push_back({"support[greedy]", greedy, verify_support_theorem(f, greedy, qmax)});
    runs.push_back({"support[empty]", {}, verify_support_theorem(f, {}, qmax)});
  }
  if (bounds) runs.push_back({"bounds[greedy]", greedy, verify_bifiltration_bounds(f, greedy, qmax)});

  int code = kExitOk;
  std::string json = "[";
  for (auto& r : runs) {
    r.report.seed = doc.seed;
    print_claims(out, r.label, r.report);
    json += (json.size() > 1 ? "," : "") + report_json(r.report);
    if (const ClaimVerdict* bad = r.report.first_failure()) {
      err << "error: claim: " << r.label << " " << bad->id << " q=" << bad->q << " violated\n"
          << counterexample_bundle(doc, r.v, *bad);
      code = kExitClaimViolated;
    }
  }
  if (!o.json_path.empty()) write_file(o.json_path, json + "]\n");
  return code;
}

int cmd_generate(const Options& o, std::ostream& out) {
  GeneratorParams p;
  p.seed = o.seed;
  p.vertices = o.vertices;
  p.parameters = o.parameters;
  p.top_dim = o.top_dim;
  p.fill = o.fill;
  p.grade_max = o.grade_max;
  p.modulus = o.modulus;
  if (!is_prime(p.modulus)) throw InputError(InputError::Kind::Semantic, "modulus must be prime");
  std::string text;
  try {
    text = print_document(generate_random(p));
  } catch (const ContractError& e) {
    throw InputError(InputError::Kind::Semantic, e.what());
  }
  if (o.output.empty())
    out << text;
  else
    write_file(o.output, text);
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  FiltrationDocument doc = load_document(o.file);
  const auto& f = doc.filtration;
  out << "ok: " << f.complex().size() << " cells, n=" << f.parameters() << ", p=" << f.complex().field().modulus()
      << "\n";
  return kExitOk;
}

std::string describe(const InputError& e) {
  std::ostringstream s;
  s << "error: " << (e.kind() == InputError::Kind::Syntax ? "syntax" : "semantic") << ": ";
  if (e.line()) {
    s << "line " << e.line();
    if (e.column()) s << ", column " << e.column();
    s << ": ";
  }
  s << e.what();
  return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multigraded Betti tables of one-critical multifiltrations"};
  app.require_subcommand(1);
  Options o;

  auto* betti = app.add_subcommand("betti", "Betti tables as CSV");
  betti->add_option("file", o.file)->required();
  betti->add_option("--qmax", o.qmax, "highest homological degree (default: top dimension)");
  betti->add_option("--json", o.json_path);
  betti->add_option("--csv", o.csv_path);

  auto* morse = app.add_subcommand("morse", "Morse complex of the greedy matching; --csv gives the critical-cell census per (q, grade)");
  morse->add_option("file", o.file)->required();
  morse->add_flag("--csv", o.csv);

  auto* homology = app.add_subcommand("homology", "dim H_q of one sublevel set");
  homology->add_option("file", o.file)->required();
  homology->add_option("--grade", o.grade)->required();

  auto* verify = app.add_subcommand("verify", "check the support bounds on a filtration");
  verify->add_option("file", o.file)->required();
  verify->add_option("--theorem", o.theorem)->check(CLI::IsMember({"support", "bounds", "all"}));
  verify->add_option("--qmax", o.qmax);
  verify->add_option("--json", o.json_path);

  auto* generate = app.add_subcommand("generate", "random lower-star filtration");
  generate->add_option("--seed", o.seed)->required();
  generate->add_option("--vertices", o.vertices)->required();
  generate->add_option("--n", o.parameters)->required();
  generate->add_option("--top-dim", o.top_dim);
  generate->add_option("--fill", o.fill, "inclusion probability per dimension, from 1")->delimiter(',');
  generate->add_option("--grade-max", o.grade_max);
  generate->add_option("-p,--modulus", o.modulus);
  generate->add_option("-o,--output", o.output);

  auto* check = app.add_subcommand("check", "parse and validate a document");
  check->add_option("file", o.file)->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (betti->parsed()) return cmd_betti(o, out);
    if (morse->parsed()) return cmd_morse(o, out);
    if (homology->parsed()) return cmd_homology(o, out);
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (generate->parsed()) return cmd_generate(o, out);
    if (check->parsed()) return cmd_check(o, out);
  } catch (const InputError& e) {
    err << describe(e) << "\n";
    return kExitInputError;
  } catch (const ContractError& e) {
    err << "error: contract: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InvariantError& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitClaimViolated;
  }
  return kExitInputError;
}

}  // namespace mpb
