#pragma once

#include <string>
#include <vector>

#include "catq/report.hpp"

namespace catq {

/// Names of all registered check suites, sorted ascending.
std::vector<std::string> suite_names();

/// Runs one registered suite under the given configuration.  Throws
/// NotFound for unknown names.  Exceptions escaping a suite body are
/// folded into a status="error" report rather than propagated.
CheckReport run_suite(const std::string& name, const RunConfig& cfg);

/// Runs the configured selection (all registered suites when the selection
/// is empty); the result is sorted by suite name.  Throws NotFound if the
/// selection names an unknown suite.
std::vector<CheckReport> run_suites(const RunConfig& cfg);

}  // namespace catq
