#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "mpbetti/cli.hpp"

using namespace mpb;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "mpbetti");
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "mpbetti_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("check and betti on the triangle fixture") {
  auto path = temp_file("triangle.txt", print_document(fixtures::triangle_boundary()));
  auto c = run({"check", path});
  CHECK(c.code == kExitOk);
  CHECK(c.out == "ok: 6 cells, n=2, p=2\n");

  auto b = run({"betti", path});
  CHECK(b.code == kExitOk);
  CHECK(b.out.find("\n0,0,0,0,1\n") != std::string::npos);
  CHECK(b.out.find("\n1,1,1,0,1\n") != std::string::npos);

  auto json = (fs::temp_directory_path() / "mpbetti_cli_test" / "t.json").string();
  CHECK(run({"betti", path, "--json", json}).code == kExitOk);
  CHECK(slurp(json).find("\"fixture_hash\"") != std::string::npos);

  auto h = run({"homology", path, "--grade", "1,1"});
  CHECK(h.out == "q=0 dim=1\nq=1 dim=1\n");
  CHECK(run({"homology", path, "--grade", "1"}).code == kExitInputError);

  auto m = run({"morse", path, "--csv"});
  CHECK(m.out == "q,u1,u2,count\n0,0,0,1\n1,1,1,1\n");
  auto mdoc = run({"morse", path});
  CHECK(mdoc.out.find("# cells 6 pairs 2 critical 2") == 0);
}

TEST_CASE("input errors exit with code 2") {
  auto bad = temp_file("bad.txt", "format v1\nparams n=2 p=2 kind=simplicial colour=red\n");
  auto r = run({"check", bad});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("error: syntax: line 2, column") == 0);

  auto sem = temp_file("sem.txt", "format v1\nparams n=1 p=2 kind=general\ncell a dim=0 grade=1\ncell a dim=0 grade=0\n");
  CHECK(run({"check", sem}).err.find("error: semantic:") == 0);

  CHECK(run({"check", "/nonexistent/file.txt"}).code == kExitInputError);
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"betti"}).err.find("error: usage:") == 0);
  CHECK(run({"verify", bad, "--theorem", "nonsense"}).code == kExitInputError);
  CHECK(run({"generate", "--seed", "1", "--vertices", "4", "--n", "2", "-p", "4"}).code == kExitInputError);
}

TEST_CASE("generate then verify") {
  for (std::uint64_t seed : {1u, 2u, 3u, 42u}) {
    auto path = (fs::temp_directory_path() / "mpbetti_cli_test" / ("g" + std::to_string(seed) + ".txt")).string();
    auto g = run({"generate", "--seed", std::to_string(seed), "--vertices", "7", "--n", seed == 3 ? "3" : "2",
                  "--fill", "0.5,0.3", "-p", "3", "-o", path});
    REQUIRE(g.code == kExitOk);
    CHECK(run({"check", path}).code == kExitOk);
    auto v = run({"verify", path, "--theorem", "all"});
    CHECK(v.code == kExitOk);
    CHECK(v.out.find("VIOLATED") == std::string::npos);
    CHECK(v.out.find("support[greedy] support-first q=0 holds") != std::string::npos);
    if (seed == 3)
      CHECK(v.out.find("bounds skipped: n=3") != std::string::npos);
    else
      CHECK(v.out.find("bounds[greedy] sandwich") != std::string::npos);
  }
  auto again = run({"generate", "--seed", "42", "--vertices", "7", "--n", "2", "--fill", "0.5,0.3", "-p", "3"});
  auto stored = slurp((fs::temp_directory_path() / "mpbetti_cli_test" / "g42.txt").string());
  CHECK(again.out == stored);
}

TEST_CASE("bounds on a 3-parameter filtration is an input error when requested") {
  auto path = temp_file("three.txt", print_document(fixtures::random_trifiltration(5)));
  CHECK(run({"verify", path, "--theorem", "bounds"}).code == kExitInputError);
}

TEST_CASE("the installed binary agrees with the in-process entry point") {
  const char* exe = std::getenv("MPBETTI_CLI");
  if (!exe) return;
  auto path = temp_file("bin.txt", print_document(fixtures::triangle_boundary()));
  auto outp = (fs::temp_directory_path() / "mpbetti_cli_test" / "bin.out").string();
  std::string cmd = std::string("\"") + exe + "\" betti \"" + path + "\" > \"" + outp + "\"";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(slurp(outp) == run({"betti", path}).out);
  std::string bad = std::string("\"") + exe + "\" check /nonexistent/file.txt 2> /dev/null";
  int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == kExitInputError);
}
