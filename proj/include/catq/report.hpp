#pragma once

#include <map>
#include <string>
#include <vector>

#include "catq/fincat.hpp"

namespace catq {

/// Outcome of one named check suite.
struct CheckReport {
  std::string suite;
  std::string status;  // "pass" | "fail" | "error"
  std::vector<Witness> witnesses;
  std::map<std::string, long long> stats;  // instance counts, keyed by what was counted
  long long duration_ms = 0;  // wall time; shown in text output only
  std::string error;          // diagnostic, populated when status == "error"
};

/// Folds a law report into a named check report.  Stats carry the instance
/// and law counts; status is "pass" or "fail".
CheckReport report_from_laws(const std::string& suite, const LawReport& rep);

/// Per-module size caps; unknown modules fall back to the given default.
/// All caps must be positive.
struct Caps {
  std::map<std::string, long long> by_module;

  long long get(const std::string& module_name, long long fallback) const;
};

/// One batch run: which suites, with what caps, seed, and output format.
struct RunConfig {
  Caps caps;
  unsigned seed = 0;               // default documented: 0
  std::vector<std::string> suites; // empty = all registered suites
  std::string format = "text";     // "text" | "json"
};

/// Renders reports as versioned JSON ("schema": 1), sorted by suite name.
/// Byte-identical for identical report lists: no timing fields appear.
std::string reports_to_json(std::vector<CheckReport> reports);

/// Human-readable rendering, sorted by suite name, durations included.
std::string reports_to_text(std::vector<CheckReport> reports);

/// Process exit code: 0 when every suite passed, 2 when any errored
/// (input problems), otherwise 1.
int exit_code(const std::vector<CheckReport>& reports);

}  // namespace catq
