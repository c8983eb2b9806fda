#include <doctest.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "mpbetti/errors.hpp"
#include "mpbetti/io.hpp"

using namespace mpb;

namespace {

InputError parse_error(std::string_view text) {
  try {
    parse_document(text);
  } catch (const InputError& e) {
    return e;
  }
  FAIL("expected InputError");
  return InputError(InputError::Kind::Syntax, "");
}

}  // namespace

TEST_CASE("parse a minimal document") {
  auto doc = parse_document("format v1\nparams n=2 p=3 kind=simplicial\ncell v1 dim=0 grade=1,0 verts=1\n");
  CHECK(doc.kind == ComplexKind::Simplicial);
  CHECK(doc.filtration.parameters() == 2);
  CHECK(doc.filtration.complex().field().modulus() == 3);
  CHECK(doc.filtration.grade(0) == GradeVector{1, 0});
  CHECK(!doc.seed);

  auto empty = parse_document("format v1\n# nothing here\nparams n=1 p=2 kind=general\n");
  CHECK(empty.filtration.complex().size() == 0);

  auto seeded = parse_document("# seed=17\nformat v1\nparams n=1 p=2 kind=general\n");
  CHECK(seeded.seed == 17u);
}

TEST_CASE("print and parse round trip") {
  auto t = fixtures::triangle_boundary(3);
  auto text = print_document(t);
  auto back = parse_document(text);
  CHECK(structurally_equal(t, back));
  CHECK(print_document(back) == text);

  auto general = parse_document(
      "format v1\nparams n=1 p=5 kind=general\n"
      "cell a dim=0 grade=0\ncell b dim=0 grade=0\ncell e dim=1 grade=2 bdry=a:-1,b:1\n");
  auto again = parse_document(print_document(general));
  CHECK(structurally_equal(general, again));
  CHECK(!structurally_equal(general, t));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto doc = fixtures::random_bifiltration(seed, 3);
    CHECK(structurally_equal(doc, parse_document(print_document(doc))));
  }
}

TEST_CASE("semantic errors name the offending cells") {
  auto e = parse_error(
      "format v1\nparams n=2 p=2 kind=simplicial\n"
      "cell v1 dim=0 grade=1,1 verts=1\ncell v2 dim=0 grade=0,0 verts=2\ncell e1_2 dim=1 grade=0,1 verts=1,2\n");
  CHECK(e.kind() == InputError::Kind::Semantic);
  std::string msg = e.what();
  CHECK(msg.find("v1") != std::string::npos);
  CHECK(msg.find("e1_2") != std::string::npos);

  auto missing = parse_error("format v1\nparams n=1 p=2 kind=simplicial\ncell e1_2 dim=1 grade=0 verts=1,2\n");
  CHECK(missing.kind() == InputError::Kind::Semantic);

  auto dup = parse_error(
      "format v1\nparams n=1 p=2 kind=general\ncell a dim=0 grade=0\ncell a dim=0 grade=1\n");
  CHECK(dup.kind() == InputError::Kind::Semantic);

  auto square = parse_error(
      "format v1\nparams n=1 p=3 kind=general\ncell a dim=0 grade=0\ncell b dim=0 grade=0\n"
      "cell e dim=1 grade=0 bdry=a:1,b:1\ncell t dim=2 grade=0 bdry=e:1\n");
  CHECK(square.kind() == InputError::Kind::Semantic);
}

TEST_CASE("syntax errors carry line and column") {
  auto e = parse_error("format v2\n");
  CHECK(e.kind() == InputError::Kind::Syntax);
  CHECK(e.line() == 1);
  CHECK(e.column() > 0);

  auto key = parse_error("format v1\nparams n=2 p=2 kind=simplicial colour=red\n");
  CHECK(key.line() == 2);
  CHECK(key.column() == 32);

  auto grade = parse_error("format v1\nparams n=2 p=2 kind=general\ncell a dim=0 grade=1\n");
  CHECK(grade.line() == 3);

  CHECK(parse_error("params n=1 p=2 kind=general\n").line() == 1);
  CHECK(parse_error("format v1\nparams n=1 p=4 kind=general\n").line() == 2);
  CHECK(parse_error("format v1\nparams n=1 p=2 kind=general\ncell a dim=0 grade=-1\n").line() == 3);
  CHECK(parse_error("format v1\nparams n=1 p=2 kind=general\ncell a dim=x grade=0\n").line() == 3);
  CHECK(parse_error("format v1\nparams n=1 p=2 kind=general\ncell a! dim=0 grade=0\n").line() == 3);
  CHECK(parse_error("format v1\nparams n=1 p=2 kind=general\ncell a dim=0 dim=0 grade=0\n").line() == 3);
}

TEST_CASE("lower star examples") {
  auto t = fixtures::triangle_boundary();
  const auto& f = t.filtration;
  CHECK(f.grade(fixtures::cell(f, "e2_3")) == GradeVector{1, 1});
  CHECK(f.grade(fixtures::cell(f, "e1_2")) == GradeVector{1, 0});
  CHECK(t.simplices.at(fixtures::cell(f, "e1_3")) == Simplex{1, 3});
  CHECK_THROWS_AS(lower_star(PrimeField(2), {{1, 2}}, {{1, {0}}}), ContractError);
}

TEST_CASE("generator is deterministic and valid") {
  GeneratorParams g;
  g.seed = 42;
  auto a = generate_random(g), b = generate_random(g);
  CHECK(print_document(a) == print_document(b));
  CHECK(fixture_hash(a) == fixture_hash(b));
  CHECK(a.seed == 42u);
  CHECK(validate_complex(a.filtration.complex()).ok());
  CHECK(validate_one_critical(a.filtration).ok());
  int qmax = std::max(0, a.filtration.complex().top_dim());
  CHECK(!hilbert_check(a.filtration, qmax, betti_tables(a.filtration, qmax)));
  CHECK(a.filtration.complex().count_of_dim(0) == 8);

  g.seed = 43;
  CHECK(print_document(generate_random(g)) != print_document(a));

  GeneratorParams bare;
  bare.fill = {0.0, 0.0};
  bare.vertices = 5;
  auto v = generate_random(bare);
  CHECK(v.filtration.complex().size() == 5);

  GeneratorParams full;
  full.fill = {1.0, 1.0};
  full.vertices = 4;
  CHECK(generate_random(full).filtration.complex().size() == 4 + 6 + 4);

  GeneratorParams one;
  one.parameters = 1;
  one.grade_max = 0;
  for (CellIndex c = 0; c < generate_random(one).filtration.complex().size(); ++c)
    CHECK(generate_random(one).filtration.grade(c) == GradeVector{0});
}

TEST_CASE("CSV and JSON output") {
  auto t = fixtures::triangle_boundary();
  auto table = betti_tables(t.filtration, 1);
  CHECK(betti_csv(table) == "q,u1,u2,i,xi\n0,0,0,0,1\n1,1,1,0,1\n");

  auto j = nlohmann::json::parse(betti_json(table, 7, fixture_hash(t)));
  CHECK(j["parameters"] == 2);
  CHECK(j["modulus"] == 2);
  CHECK(j["seed"] == 7);
  CHECK(j["entries"].size() == 2);

  auto report = verify_support_theorem(t.filtration, build_matching(t.filtration), 1);
  auto r = nlohmann::json::parse(report_json(report));
  for (const auto& c : r["claims"]) CHECK(c["holds"] == true);
  CHECK(r["grades"]["1"]["homological"].size() == 1);
  CHECK(r["claims"].size() == report.claims.size());

  ClaimVerdict fake{"support-first", 0, false, GradeVector{1, 1}};
  auto bundle = nlohmann::json::parse(counterexample_bundle(t, build_matching(t.filtration), fake));
  CHECK(bundle["claim"]["id"] == "support-first");
  CHECK(structurally_equal(parse_document(bundle["document"].get<std::string>()), t));
}
