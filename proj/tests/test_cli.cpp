#include <catch2/catch.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bernlab/geometry.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kBin = BERNLAB_BIN;
const std::string kConfigDir = BERNLAB_CONFIG_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "bernlab_cli_log.txt";
  const std::string cmd = kBin + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(log);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bernlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

size_t count_occurrences(const std::string& text, const std::string& what) {
  size_t n = 0, pos = 0;
  while ((pos = text.find(what, pos)) != std::string::npos) {
    ++n;
    pos += what.size();
  }
  return n;
}

}  // namespace

TEST_CASE("help lists the subcommands", "[cli]") {
  const auto r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("solve") != std::string::npos);
  CHECK(r.output.find("verify") != std::string::npos);
  CHECK(r.output.find("plot") != std::string::npos);
}

TEST_CASE("solve writes a radial bundle near the oracle radius", "[cli]") {
  const auto out = fresh_dir("radial");
  const auto r = run_cli("solve --config " + kConfigDir + "/radial.json --out " + out.string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  for (const char* f : {"boundary.csv", "k.csv", "trace.csv", "field.csv", "q_polar.csv",
                        "report.txt", "plot.svg"})
    CHECK(fs::exists(out / f));

  const auto boundary = bernlab::polygon_from_csv(slurp(out / "boundary.csv"));
  const double rstar = oracles::radial_bernoulli_radius(1.0, 1.0);
  const auto circle = bernlab::ConvexPolygon::regular_polygon({0, 0}, rstar, 1024);
  CHECK(bernlab::hausdorff(boundary, circle) <= 0.01 * rstar);

  const auto report = slurp(out / "report.txt");
  CHECK(report.find("converged: true") != std::string::npos);

  SECTION("plot re-renders the bundle with two closed paths") {
    const auto pr = run_cli("plot --bundle " + out.string() + " --out " +
                            (out / "replot.svg").string());
    CHECK(pr.exit_code == 0);
    const auto svg = slurp(out / "replot.svg");
    CHECK(count_occurrences(svg, "<path") >= 2);  // boundary and K
    CHECK(count_occurrences(svg, "Z\"") >= 2);    // both closed
  }
}

TEST_CASE("solve on an usc config writes stage bundles and the limit", "[cli]") {
  const auto out = fresh_dir("usc");
  const auto r = run_cli("solve --config " + kConfigDir + "/usc.json --out " + out.string());
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  for (const char* d : {"stage_01_j2", "stage_02_j4", "stage_03_j8", "stage_04_j16", "limit"})
    CHECK(fs::exists(out / d / "boundary.csv"));
  CHECK(fs::exists(out / "plot.svg"));

  // nested stage boundaries: support grows along the schedule, up to h slack
  const auto s1 = bernlab::polygon_from_csv(slurp(out / "stage_01_j2" / "boundary.csv"));
  const auto s4 = bernlab::polygon_from_csv(slurp(out / "stage_04_j16" / "boundary.csv"));
  double excess = 0.0;
  for (int k = 0; k < 360; ++k) {
    const bernlab::Vec2 d{std::cos(bernlab::kTwoPi * k / 360),
                          std::sin(bernlab::kTwoPi * k / 360)};
    excess = std::max(excess, s1.support(d) - s4.support(d));
  }
  CHECK(excess <= 0.05);  // the config's h

  // the parent plot overlays the stage sequence
  const auto svg = slurp(out / "plot.svg");
  CHECK(count_occurrences(svg, "<path") >= 6);
}

TEST_CASE("config errors exit 1 and name the offense", "[cli]") {
  const auto dir = fresh_dir("badcfg");

  {
    std::ofstream bad(dir / "nonpositive_q.json");
    bad << R"({"K": {"shape": "circle", "radius": 1.0},
               "anisotropy": {"kind": "constant", "value": -0.5}})";
  }
  auto r = run_cli("solve --config " + (dir / "nonpositive_q.json").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("positive") != std::string::npos);

  {
    std::ofstream bad(dir / "unknown_key.json");
    bad << R"({"K": {"shape": "circle", "radius": 1.0},
               "anisotropy": {"kind": "constant", "value": 1.0},
               "frobnicate": true})";
  }
  r = run_cli("solve --config " + (dir / "unknown_key.json").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("frobnicate") != std::string::npos);

  r = run_cli("solve --config " + (dir / "does_not_exist.json").string());
  CHECK(r.exit_code == 1);
}

TEST_CASE("verify runs a single check with --only", "[cli]") {
  const auto r = run_cli("verify --only straszewicz");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("straszewicz") != std::string::npos);
  CHECK(r.output.find("PASSED") != std::string::npos);
  CHECK(r.output.find("counterexample") == std::string::npos);

  const auto bad = run_cli("verify --only nonsense");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("unknown check") != std::string::npos);
}

TEST_CASE("verify fails on an impossible threshold", "[cli]") {
  const auto dir = fresh_dir("badsuite");
  {
    std::ofstream suite(dir / "suite.json");
    suite << R"({"checks": ["straszewicz"],
                 "overrides": {"straszewicz": {"bound_factor": 1e-9}}})";
  }
  const auto r = run_cli("verify --suite " + (dir / "suite.json").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAILED") != std::string::npos);
}

TEST_CASE("plot on a missing bundle exits 1", "[cli]") {
  const auto r = run_cli("plot --bundle /definitely/not/here");
  CHECK(r.exit_code == 1);
}

TEST_CASE("usage errors exit 1", "[cli]") {
  CHECK(run_cli("solve").exit_code == 1);       // missing required --config
  CHECK(run_cli("frobnicate").exit_code == 1);  // unknown subcommand
  CHECK(run_cli("").exit_code == 1);            // missing subcommand
}

TEST_CASE("verify fans out checks with --jobs", "[cli]") {
  const auto dir = fresh_dir("jobs");
  {
    std::ofstream suite(dir / "suite.json");
    suite << R"({"checks": ["straszewicz", "counterexample"],
                 "overrides": {"counterexample": {"h": 0.05}}})";
  }
  const auto r = run_cli("verify --suite " + (dir / "suite.json").string() + " --jobs 2");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  // reports merged in declaration order
  const auto a = r.output.find("straszewicz");
  const auto b = r.output.find("counterexample");
  REQUIRE(a != std::string::npos);
  REQUIRE(b != std::string::npos);
  CHECK(a < b);
}
