#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polyrec/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = polyrec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("counterexample build") {
  const auto r = run({"counterexample", "build", "--poly", "0,1", "--L", "2"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == polyrec::cli::kSchemaVersion);
  CHECK(j["a"] == 3);
  CHECK(j["M"] == 36);
  CHECK(j["period"] == 108);
  CHECK(j["block"] == json::array({37, 72}));
  CHECK(j["lambda_formula"] == "108*j + 6");
}

TEST_CASE("counterexample verify from a descriptor file") {
  const auto built = run({"counterexample", "build", "--poly", "0,1", "--L", "2"});
  {
    std::ofstream f("cli_desc.json");
    f << built.out;
  }
  const auto r = run({"counterexample", "verify", "--poly", "0,1", "--L", "2", "--jmax", "3", "--desc", "cli_desc.json"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verified"] == true);
}

TEST_CASE("profile CSV") {
  {
    std::ofstream f("cli_A.txt");
    f << "#N=10\n1\n3\n4\n";
  }
  const auto r = run({"profile", "--set", "cli_A.txt", "--poly", "0,1", "--L", "0"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "n,Pn,count,ratio");
  CHECK(row.rfind("0,0,3,", 0) == 0);
  CHECK_FALSE(std::getline(lines, extra));
}

TEST_CASE("weyl eval") {
  const auto r = run({"weyl", "eval", "--mu", "4", "--alpha", "1/2", "--k", "1"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(std::abs(j["re"].get<double>()) < 1e-12);
  CHECK(std::abs(j["im"].get<double>()) < 1e-12);
}

TEST_CASE("exit codes") {
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"profile", "--poly", "0,1"}).code == 1);
  CHECK(run({"profile", "--gen", "full", "--N", "10", "--poly", "x"}).code == 1);
  CHECK(run({"counterexample", "build", "--poly", "0,-1", "--L", "2"}).code == 2);
  CHECK(run({"profile", "--gen", "full", "--N", "100", "--poly", "0,1", "--method", "fft", "--L", "3"}).code == 0);
  CHECK(run({"spectral", "identity", "--M", "5000", "--k", "3", "--lambda", "0", "--mu", "1"}).code == 3);
}

TEST_CASE("outputs are deterministic and independent of the thread count") {
  const std::vector<std::string> base{"experiment", "khintchine", "--N", "2000", "--trials", "3", "--seed", "4"};
  auto one = base;
  one.insert(one.begin(), {"--threads", "1"});
  auto four = base;
  four.insert(four.begin(), {"--threads", "4"});
  const auto a = run(one);
  const auto b = run(four);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run(base).out == a.out);
}

TEST_CASE("every subcommand emits versioned JSON") {
  const std::vector<std::vector<std::string>> cmds{
      {"returns", "--gen", "random:1/2", "--N", "400", "--seed", "2", "--eps", "1/20"},
      {"weyl", "relations", "--lambda", "12", "--mu", "6", "--q", "3", "--k", "2", "--samples", "8"},
      {"weyl", "scan", "--eta", "3/10", "--mu", "100", "--samples", "50"},
      {"arcs", "member", "--alpha", "1/2,1/4", "--eta", "1/2", "--lambda", "100", "--mu", "100"},
      {"arcs", "overlap", "--eta", "1/5", "--k", "1", "--windows", "300:300,24000:24000", "--samples", "50"},
      {"spectral", "identity", "--M", "6", "--k", "2", "--lambda", "1", "--mu", "2"},
      {"spectral", "mass", "--M", "6", "--k", "2", "--eta", "1/2", "--lambda", "4", "--mu", "2"},
      {"dichotomy", "--M", "16", "--k", "1", "--eps", "1/10", "--eta", "1/2", "--lambda", "4", "--mu", "4"},
      {"lift", "--gen", "ap:2+0", "--N", "40", "--poly", "2", "--eps", "1/5", "--L", "4", "--eta", "1/2"},
      {"profile", "--gen", "full", "--N", "50", "--poly", "0,1", "--format", "json"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    INFO(c[0], " ", r.err);
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["schema_version"] == polyrec::cli::kSchemaVersion);
  }
}

TEST_CASE("svg output and --out files") {
  const auto r = run({"--out", "cli_profile.svg", "profile", "--gen", "full", "--N", "50", "--poly", "0,1", "--format", "svg"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f("cli_profile.svg");
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str().rfind("<svg", 0) == 0);
}
