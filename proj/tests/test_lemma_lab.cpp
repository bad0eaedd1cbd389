#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bernlab/lemma_lab.hpp"

using namespace bernlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bernlab_lab_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("straszewicz check passes with the arc-spacing bound", "[lemma_lab]") {
  const auto r = check_straszewicz({}, {});
  CHECK(r.status == CheckStatus::kPassed);
  CHECK(r.passed);
  for (const auto& m : r.metrics) {
    INFO(m.name);
    CHECK(m.pass);
  }
  // thresholds are the documented 2*2pi/N bounds
  REQUIRE(r.metrics.size() >= 3);
  CHECK(r.metrics[0].threshold == Approx(2.0 * kTwoPi / 64));
  CHECK(r.metrics[1].threshold == Approx(2.0 * kTwoPi / 256));
  CHECK(r.metrics[2].threshold == Approx(2.0 * kTwoPi / 1024));
}

TEST_CASE("counterexample check reproduces the remark", "[lemma_lab]") {
  CounterexampleConfig cfg;
  cfg.h = 0.04;
  const auto dir = fresh_dir("counterexample");
  const auto r = check_counterexample(cfg, {dir});
  CHECK(r.passed);
  REQUIRE(!r.artifacts.empty());
  CHECK(fs::exists(r.artifacts.front()));
  bool has_excess = false;
  for (const auto& m : r.metrics)
    if (m.name == "midpoint_inequality_excess") {
      has_excess = true;
      CHECK(m.value == Approx(2.0));  // 4 vs (2+2)/2
      CHECK(!m.less_is_pass);
    }
  CHECK(has_excess);
}

TEST_CASE("facet convexity check and skip logic", "[lemma_lab]") {
  FacetConvexityConfig cfg;
  cfg.h_levels = {0.04, 0.02};
  const auto r = check_facet_convexity(cfg, {});
  CHECK(r.status == CheckStatus::kPassed);
  for (const auto& m : r.metrics) {
    INFO(m.name);
    CHECK(m.pass);
  }

  FacetConvexityConfig coarse;
  coarse.h_levels = {0.6};  // facet of length 4 is shorter than 8h
  const auto s = check_facet_convexity(coarse, {});
  CHECK(s.status == CheckStatus::kSkipped);
  CHECK(s.passed);
}

TEST_CASE("comparison check orders the oracle pairs", "[lemma_lab]") {
  ComparisonConfig cfg;
  cfg.h = 0.05;
  const auto r = check_comparison(cfg, {});
  CHECK(r.status == CheckStatus::kPassed);
  for (const auto& m : r.metrics) {
    INFO(m.name << " = " << m.value << " vs " << m.threshold);
    CHECK(m.pass);
  }
}

TEST_CASE("monotone usc check", "[lemma_lab]") {
  MonotoneUscConfig cfg;
  cfg.h = 0.06;
  const auto r = check_monotone_usc(cfg, {});
  CHECK(r.status == CheckStatus::kPassed);
  for (const auto& m : r.metrics) {
    INFO(m.name << " = " << m.value << " vs " << m.threshold);
    CHECK(m.pass);
  }
}

TEST_CASE("suite driver semantics", "[lemma_lab]") {
  SECTION("subset runs in declaration order") {
    SuiteConfig cfg;
    cfg.checks = {"straszewicz", "counterexample"};
    cfg.counterexample.h = 0.05;
    const auto reports = run_all(cfg);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].check_id == "straszewicz");
    CHECK(reports[1].check_id == "counterexample");
    CHECK(all_passed(reports));
    const auto table = summary_table(reports);
    CHECK(table.find("straszewicz") != std::string::npos);
    CHECK(table.find("PASSED") != std::string::npos);
  }

  SECTION("empty suite") {
    SuiteConfig cfg;
    cfg.checks = {};
    const auto reports = run_all(cfg);
    CHECK(reports.empty());
    CHECK(all_passed(reports));
  }

  SECTION("unknown check name") {
    SuiteConfig cfg;
    cfg.checks = {"straszewicz", "nonsense"};
    CHECK_THROWS_AS(run_all(cfg), ConfigInvalid);
  }

  SECTION("a failing check is recorded and the suite continues") {
    SuiteConfig cfg;
    cfg.checks = {"straszewicz", "counterexample"};
    cfg.straszewicz.bound_factor = 1e-9;  // impossible threshold
    cfg.counterexample.h = 0.05;
    const auto reports = run_all(cfg);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].status == CheckStatus::kFailed);
    CHECK(reports[1].status == CheckStatus::kPassed);
    CHECK(!all_passed(reports));
    CHECK(summary_table(reports).find("FAILED") != std::string::npos);
  }
}

TEST_CASE("check artifacts are byte-identical across runs", "[lemma_lab]") {
  const auto dir_a = fresh_dir("det_a");
  const auto dir_b = fresh_dir("det_b");
  SuiteConfig cfg;
  cfg.checks = {"straszewicz", "counterexample"};
  cfg.counterexample.h = 0.05;
  cfg.out_dir = dir_a;
  const auto ra = run_all(cfg);
  cfg.out_dir = dir_b;
  const auto rb = run_all(cfg);
  REQUIRE(ra.size() == rb.size());

  int csv_count = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    ++csv_count;
    const auto rel = fs::relative(entry.path(), dir_a);
    CHECK(slurp(entry.path()) == slurp(dir_b / rel));
  }
  CHECK(csv_count >= 2);
}
