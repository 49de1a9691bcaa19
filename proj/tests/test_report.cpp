#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"

#include "catq/errors.hpp"
#include "catq/report.hpp"

using namespace catq;

namespace {

CheckReport passing(const std::string& name, long long instances) {
  LawReport laws;
  laws.note_law("alpha");
  laws.instances = instances;
  return report_from_laws(name, laws);
}

CheckReport failing(const std::string& name) {
  LawReport laws;
  laws.note_law("alpha");
  laws.instances = 3;
  laws.fail("alpha", {7, 9}, "something broke");
  return report_from_laws(name, laws);
}

}  // namespace

TEST_CASE("folding a law report keeps status, witnesses, and counts") {
  LawReport laws;
  laws.note_law("assoc");
  laws.note_law("unit");
  laws.instances = 42;
  CheckReport ok = report_from_laws("demo", laws);
  CHECK(ok.suite == "demo");
  CHECK(ok.status == "pass");
  CHECK(ok.witnesses.empty());
  CHECK(ok.stats.at("instances") == 42);
  CHECK(ok.stats.at("laws") == 2);

  laws.fail("unit", {5}, "identity missing");
  CheckReport bad = report_from_laws("demo", laws);
  CHECK(bad.status == "fail");
  REQUIRE(bad.witnesses.size() == 1);
  CHECK(bad.witnesses[0].law == "unit");
  CHECK(bad.witnesses[0].ids == std::vector<long long>{5});
}

TEST_CASE("caps fall back per module and reject non-positive entries") {
  Caps caps;
  CHECK(caps.get("anything", 9) == 9);
  caps.by_module["bc"] = 2;
  CHECK(caps.get("bc", 9) == 2);
  CHECK(caps.get("set", 5) == 5);
  caps.by_module["broken"] = 0;
  CHECK_THROWS_AS(caps.get("broken", 1), MalformedInput);
  caps.by_module["negative"] = -3;
  CHECK_THROWS_AS(caps.get("negative", 1), MalformedInput);
}

TEST_CASE("json rendering is sorted, versioned, and byte-stable") {
  std::vector<CheckReport> reports = {passing("zeta", 10), passing("alpha", 4)};
  reports[0].duration_ms = 111;  // timing must not leak into the JSON
  reports[1].duration_ms = 222;
  const std::string a = reports_to_json(reports);
  reports[0].duration_ms = 999;  // different timing, identical bytes expected
  const std::string b = reports_to_json(reports);
  CHECK(a == b);
  CHECK(a.back() == '\n');

  const nlohmann::json doc = nlohmann::json::parse(a);
  CHECK(doc.at("schema") == 1);
  CHECK(doc.at("overall") == "pass");
  REQUIRE(doc.at("reports").size() == 2);
  CHECK(doc.at("reports")[0].at("suite") == "alpha");  // sorted by name
  CHECK(doc.at("reports")[1].at("suite") == "zeta");
  CHECK(doc.at("reports")[0].at("stats").at("instances") == 4);
  CHECK(doc.at("reports")[0].count("duration_ms") == 0);
  CHECK(doc.at("reports")[0].count("error") == 0);
}

TEST_CASE("json rendering carries witnesses and error diagnostics") {
  std::vector<CheckReport> reports = {failing("bad")};
  CheckReport err;
  err.suite = "worse";
  err.status = "error";
  err.error = "file not found";
  reports.push_back(err);

  const nlohmann::json doc = nlohmann::json::parse(reports_to_json(reports));
  CHECK(doc.at("overall") == "fail");
  const auto& bad = doc.at("reports")[0];
  REQUIRE(bad.at("witnesses").size() == 1);
  CHECK(bad.at("witnesses")[0].at("law") == "alpha");
  CHECK(bad.at("witnesses")[0].at("ids") == nlohmann::json({7, 9}));
  CHECK(bad.at("witnesses")[0].at("detail") == "something broke");
  CHECK(doc.at("reports")[1].at("error") == "file not found");
}

TEST_CASE("text rendering lists each suite with duration and an overall line") {
  std::vector<CheckReport> reports = {passing("beta", 6), failing("alpha")};
  reports[0].duration_ms = 12;
  const std::string text = reports_to_text(reports);
  CHECK(text.find("alpha: fail (3 instances, 0 ms)") != std::string::npos);
  CHECK(text.find("beta: pass (6 instances, 12 ms)") != std::string::npos);
  CHECK(text.find("witness [alpha] ids=7,9: something broke") != std::string::npos);
  CHECK(text.find("overall: fail") != std::string::npos);
  CHECK(text.find("alpha") < text.find("beta"));  // sorted by name
}

TEST_CASE("exit code distinguishes pass, fail, and error") {
  std::vector<CheckReport> all_pass = {passing("a", 1), passing("b", 1)};
  CHECK(exit_code(all_pass) == 0);

  std::vector<CheckReport> with_fail = {passing("a", 1), failing("b")};
  CHECK(exit_code(with_fail) == 1);

  CheckReport err;
  err.suite = "c";
  err.status = "error";
  err.error = "boom";
  std::vector<CheckReport> with_error = {failing("a"), err};
  CHECK(exit_code(with_error) == 2);
}
