// Runs every scenario and prints one line per acceptance criterion.
#include <cstdio>

#include "curvegeo/scenarios.hpp"

int main() {
  using namespace curvegeo;
  const ScenarioContext ctx;
  const AcceptanceReport rep = evaluate_acceptance(ctx);
  for (const ScenarioReport& s : rep.scenarios) {
    if (!s.error.empty()) std::printf("scenario %s aborted: %s\n", s.id.c_str(), s.error.c_str());
  }
  for (const CriterionResult& c : rep.criteria) {
    std::printf("criterion %2d %s: %s\n", c.number, c.passed ? "PASS" : "FAIL", c.title.c_str());
    for (const Check& k : c.checks) {
      if (!k.passed) std::printf("    failed %s: %s\n", k.name.c_str(), k.detail.c_str());
    }
  }
  return rep.passed() ? 0 : 1;
}
