#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"
#include "tcx/cli.hpp"
#include "tcx/json_io.hpp"

using namespace tcx;

namespace {

std::string write_fixture(const TriangleComplex& X, const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tcx_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream f(path);
  f << dump_deterministic(complex_to_json(X));
  return path.string();
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("validate and check exit codes") {
  std::string c3 = write_fixture(fixtures::c3_theta_circle(), "c3.json");
  std::string fan5 = write_fixture(fixtures::equilateral_fan(5), "fan5.json");

  auto v = run({"validate", c3});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"essential\": true") != std::string::npos);

  auto ok = run({"check", c3});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("\"locally_cat0\": true") != std::string::npos);

  auto bad = run({"check", fan5});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("\"locally_cat0\": false") != std::string::npos);
}

TEST_CASE("broken documents exit 2") {
  auto dir = std::filesystem::temp_directory_path() / "tcx_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / "broken.json";
  {
    std::ofstream f(path);
    f << "{\"vertices\": [\"a\",\"b\",\"c\"], \"triangles\": [{\"v\": "
         "[\"a\",\"b\",\"c\"], \"angles\": [{\"pi\":\"1/2\"},{\"pi\":\"1/2\"},"
         "{\"pi\":\"1/2\"}], \"sides\": [1,1,1]}]}";
  }
  auto r = run({"validate", path.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("AngleSumViolation") != std::string::npos);

  auto missing = run({"validate", (dir / "nope.json").string()});
  CHECK(missing.code == 2);

  auto usage = run({"frobnicate"});
  CHECK(usage.code == 2);
}

TEST_CASE("deterministic output byte for byte") {
  std::string c3 = write_fixture(fixtures::c3_theta_circle(), "c3.json");
  for (const char* sub : {"validate", "check", "links", "patches", "rational"}) {
    auto a = run({sub, c3});
    auto b = run({sub, c3});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
  auto w1 = run({"witness", c3, "--edge", "u.0,u.1", "--offsets", "3",
                 "--budget", "4.5", "--word-length", "2"});
  auto w2 = run({"witness", c3, "--edge", "u.0,u.1", "--offsets", "3",
                 "--budget", "4.5", "--word-length", "2"});
  CHECK(w1.code == 0);
  CHECK(w1.out == w2.out);
}

TEST_CASE("unfold emits a loadable complex") {
  std::string wedge = write_fixture(fixtures::wedge_hex_hex(), "wedge.json");
  auto r = run({"unfold", wedge});
  CHECK(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["steps"].size() == 1);
  TriangleComplex Y = complex_from_json(doc["complex"]);
  CHECK(Y.vertex_count() == fixtures::wedge_hex_hex().vertex_count() + 1);
}

TEST_CASE("trace subcommand reports crossings") {
  std::string c1 = write_fixture(fixtures::c1_square(), "c1.json");
  auto r = run({"trace", c1, "--edge", "A,B", "--offset", "0.25", "--tri",
                "A,B,C", "--angle-pi", "1/2", "--budget", "3"});
  CHECK(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["status"] == "HitBoundary");
  CHECK(doc["crossings"].size() == 2);
}

TEST_CASE("rational subcommand verdicts and exit codes") {
  std::string c3 = write_fixture(fixtures::c3_theta_circle(), "c3.json");
  auto r = run({"rational", c3});
  CHECK(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["extrational"] == true);
  CHECK(doc["shear_spectra"].size() == 3);

  std::string fan7 = write_fixture(fixtures::equilateral_fan(7), "fan7.json");
  auto r7 = run({"rational", fan7});
  CHECK(r7.code == 1);
  Json doc7 = Json::parse(r7.out);
  CHECK(doc7["extrational"] == false);
}

TEST_CASE("witness subcommand completes on C3") {
  std::string c3 = write_fixture(fixtures::c3_theta_circle(), "c3.json");
  auto r = run({"witness", c3, "--edge", "u.0,u.1", "--offsets", "3", "--budget",
                "4.5", "--word-length", "2"});
  CHECK(r.code == 0);
  Json doc = Json::parse(r.out);
  CHECK(doc["complete"] == true);
  CHECK(doc["connections"].size() >= 3);
  CHECK(doc["words_verified"] == 16);
}

TEST_CASE("render and svg outputs") {
  std::string c3 = write_fixture(fixtures::c3_theta_circle(), "c3.json");
  auto dir = std::filesystem::temp_directory_path() / "tcx_cli_tests";
  auto svg = (dir / "c3.svg").string();
  auto r = run({"render", c3, "--svg", svg});
  CHECK(r.code == 0);
  std::ifstream f(svg);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
}
