#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "curvegeo/classify.hpp"
#include "curvegeo/scenarios.hpp"

namespace curvegeo::cli {

/// Runs the command line; output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Deterministic `key: value` text of a classification.
std::string format_report(const ClassificationReport& report);

std::string format_scenario(const ScenarioReport& report);

std::string format_acceptance(const AcceptanceReport& report);

}  // namespace curvegeo::cli
