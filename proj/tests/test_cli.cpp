#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "modform/cli.hpp"

using namespace modform;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "modform");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_command(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l)) {
    if (l == line) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("ratio summary") {
    const Run r = run({"ratio", "--f", "delta", "--g", "scale:2:delta", "--xmax", "100"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["size"] == 1);
    CHECK(j["points"] == nlohmann::json({"[1:2]"}));
    CHECK(j["primes"] == 25);
  }

  TEST_CASE("ratio CSV log") {
    const Run r = run({"--format", "csv", "ratio", "--f", "delta", "--g", "scale:2:delta", "--xmax", "10"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "p,a_f(p),a_g(p),ratio_id\n2,-24,-48,0\n3,252,504,0\n5,4830,9660,0\n7,-16744,-33488,0\n");
  }

  TEST_CASE("theta of E8") {
    const Run r = run({"theta", "--gram", "e8", "--prec", "50"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "n,r(n)"));
    CHECK(has_line(r.out, "1,240"));
    CHECK(has_line(r.out, "2,2160"));
  }

  TEST_CASE("output is deterministic") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"ratio", "--f", "delta", "--g", "delta*e4", "--xmax", "200", "--grid", "50,100,200"},
          std::vector<std::string>{"eigen", "-k", "24", "--prec", "10"},
          std::vector<std::string>{"asymp", "--kind", "ck", "-k", "0", "-m", "1", "--from", "10", "--to", "40"}}) {
      const Run a = run(args), b = run(args);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK(a.err == b.err);
    }
  }

  TEST_CASE("basis, dj and hecke values") {
    const Run basis = run({"basis", "-k", "12", "--prec", "3"});
    CHECK(basis.out == "n,g0,g1\n0,1,0\n1,0,1\n2,196560,-24\n3,16773120,252\n");
    const Run dj = run({"dj", "-k", "0", "-m", "1", "--prec", "2"});
    CHECK(dj.out == "n,a(n)\n-1,1\n0,0\n1,196884\n2,21493760\n");
    const Run hecke = run({"hecke", "--f", "delta", "--p", "2", "--prec", "3"});
    CHECK(hecke.out == "n,a(n)\n0,0\n1,-24\n2,576\n3,-6048\n");
    const Run weight = run({"hecke", "--weight", "4", "--p", "3", "--prec", "1"});
    CHECK(weight.out == "n,T3_g0\n0,28\n1,6720\n");
  }

  TEST_CASE("asymptotic CSV uses scientific notation") {
    const Run r = run({"asymp", "--kind", "dk", "-k", "4", "--from", "1", "--to", "3"});
    REQUIRE(r.code == 0);
    CHECK(has_line(r.out, "1,2.4000000000000000e+02,0.0000000000000000e+00"));
    CHECK(r.err.find("tail relative variation") != std::string::npos);
  }

  TEST_CASE("errors are single prefixed lines with nonzero exit") {
    for (const std::vector<std::string>& args : {
             std::vector<std::string>{"ratio", "--f", "bogus", "--g", "delta"},
             std::vector<std::string>{"dj", "-k", "12", "-m", "-2"},
             std::vector<std::string>{"bogus"},
             std::vector<std::string>{"theta", "--gram", "no_such_file.json"},
             std::vector<std::string>{"eigen", "-k", "36"},
             std::vector<std::string>{"basis", "-k", "7"},
             std::vector<std::string>{"--format", "xml", "basis", "-k", "4"},
         }) {
      CAPTURE(args[0]);
      const Run r = run(args);
      CHECK(r.code != 0);
      CHECK(r.out.empty());
      CHECK(r.err.rfind("modform: error[", 0) == 0);
      CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(run({"ratio", "--f", "bogus", "--g", "delta"}).err.rfind("modform: error[parse]", 0) == 0);
    CHECK(run({"dj", "-k", "12", "-m", "-2"}).err.rfind("modform: error[domain]", 0) == 0);
  }

  TEST_CASE("precision cap") {
    setenv("MODFORM_PREC_CAP", "50", 1);
    const Run r = run({"ratio", "--f", "delta", "--g", "delta*e4", "--xmax", "100"});
    unsetenv("MODFORM_PREC_CAP");
    CHECK(r.code != 0);
    CHECK(r.err.rfind("modform: error[precision]", 0) == 0);
    CHECK(run({"ratio", "--f", "delta", "--g", "delta*e4", "--xmax", "100"}).code == 0);
  }

  TEST_CASE("--out writes to a file") {
    const std::string path = "cli_test_out.csv";
    const Run r = run({"--out", path, "basis", "-k", "12", "--prec", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "n,g0,g1\n0,1,0\n1,0,1\n2,196560,-24\n3,16773120,252\n");
    std::remove(path.c_str());
  }
}
