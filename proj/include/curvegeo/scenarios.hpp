#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvegeo/classify.hpp"
#include "curvegeo/gallery.hpp"
#include "curvegeo/io.hpp"
#include "curvegeo/ode.hpp"
#include "curvegeo/tracer.hpp"

namespace curvegeo {

/// One measured expectation. `criterion` links it to a numbered acceptance
/// criterion (0 for supporting checks that only affect the scenario).
struct Check {
  int criterion = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  std::string title;
  std::vector<Check> checks;
  std::string error;  // set when the run aborted

  bool passed() const;
};

/// Everything a run depends on. Scenario parameters are read from
/// `config` under "<id>." prefixes (for example S2.phi = 0.5235987755982988);
/// the defaults reproduce the published examples.
struct ScenarioContext {
  io::Config config;
  ode::Options tolerances;
  ClassifyOptions classify;
};

/// Scenario catalogue in run order: S1..S8, then the corpus suites
/// C1, C2, C10 and C12 named after the criterion they feed.
const std::vector<std::string>& scenario_ids();
std::string scenario_title(const std::string& id);

/// Throws InvalidArgument for an unknown id; module errors are caught and
/// reported in ScenarioReport::error.
ScenarioReport run_scenario(const std::string& id, const ScenarioContext& ctx);

/// Runs concurrently; reports come back in the order of `ids`.
std::vector<ScenarioReport> run_scenarios(const std::vector<std::string>& ids, const ScenarioContext& ctx,
                                          bool parallel = true);

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::vector<Check> checks;  // copies, names prefixed with the scenario id
};

struct AcceptanceReport {
  std::vector<ScenarioReport> scenarios;
  std::vector<CriterionResult> criteria;  // 1..12

  bool passed() const;
};

std::string criterion_title(int number);

/// All scenarios and suites, aggregated into the twelve criteria.
AcceptanceReport evaluate_acceptance(const ScenarioContext& ctx, bool parallel = true);

/// A curve of the classification corpus with its scalars and verdicts.
struct CorpusCurve {
  std::string label;
  std::optional<GalleryOracle> oracle;
  CurveData data;
  ClassificationReport report;
  double speed_drift = 0;  // max ||gamma'| - 1| for second-order traces
};

/// Traced curves over every gallery surface plus a few analytic ones.
std::vector<CorpusCurve> build_curve_corpus(const ScenarioContext& ctx);

/// max over stations of ||X_t t' + X_z z'| - 1|.
double speed_drift(const SurfaceDef& surface, const Trace& trace);

}  // namespace curvegeo
