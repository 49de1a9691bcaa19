#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "catq/errors.hpp"
#include "catq/report.hpp"
#include "catq/suites.hpp"

using namespace catq;

TEST_CASE("the registry lists every suite in sorted order") {
  const std::vector<std::string> names = suite_names();
  const std::vector<std::string> expected = {
      "beck-chevalley", "dtt-substitution", "groth",          "interchange",
      "kan",            "mutation",         "pseudolimit",    "set-adjunction",
      "set-model",      "slice",            "spans",          "strictify",
  };
  CHECK(names == expected);
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("unknown suite names are rejected up front") {
  RunConfig cfg;
  CHECK_THROWS_AS(run_suite("no-such-suite", cfg), NotFound);
  cfg.suites = {"mutation", "no-such-suite"};
  CHECK_THROWS_AS(run_suites(cfg), NotFound);
}

TEST_CASE("cheap suites pass under their default configuration") {
  RunConfig cfg;
  cfg.suites = {"beck-chevalley", "dtt-substitution", "groth",      "interchange",
                "mutation",       "pseudolimit",      "strictify"};
  const std::vector<CheckReport> reports = run_suites(cfg);
  REQUIRE(reports.size() == cfg.suites.size());
  for (const CheckReport& r : reports) {
    INFO(r.suite << ": " << reports_to_text({r}));
    CHECK(r.status == "pass");
    CHECK(r.stats.at("instances") > 0);
    CHECK(r.stats.at("laws") > 0);
  }
  CHECK(exit_code(reports) == 0);
  // Sorted by suite name regardless of selection order.
  CHECK(std::is_sorted(reports.begin(), reports.end(),
                       [](const CheckReport& a, const CheckReport& b) { return a.suite < b.suite; }));
}

TEST_CASE("duplicate selections collapse to one run") {
  RunConfig cfg;
  cfg.suites = {"mutation", "mutation"};
  CHECK(run_suites(cfg).size() == 1);
}

TEST_CASE("identical configuration yields byte-identical reports") {
  RunConfig cfg;
  cfg.seed = 7;
  cfg.suites = {"groth", "interchange", "strictify"};  // the randomized ones
  const std::string a = reports_to_json(run_suites(cfg));
  const std::string b = reports_to_json(run_suites(cfg));
  CHECK(a == b);
}

TEST_CASE("a defective cap folds into an error report, not a crash") {
  RunConfig cfg;
  cfg.caps.by_module["dtt"] = -4;
  cfg.suites = {"dtt-substitution"};
  const std::vector<CheckReport> reports = run_suites(cfg);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].status == "error");
  CHECK(!reports[0].error.empty());
  CHECK(exit_code(reports) == 2);
}

TEST_CASE("caps shrink the checked corpus") {
  RunConfig small, large;
  small.suites = large.suites = {"dtt-substitution"};
  small.caps.by_module["dtt"] = 3;
  const long long small_count = run_suites(small)[0].stats.at("instances");
  const long long large_count = run_suites(large)[0].stats.at("instances");
  CHECK(small_count > 0);
  CHECK(small_count < large_count);
}
