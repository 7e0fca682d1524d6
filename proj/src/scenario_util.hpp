#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "curvegeo/classify.hpp"
#include "curvegeo/scenarios.hpp"

namespace curvegeo::detail {

template <class... Args>
std::string fmt(const char* f, Args... args) {
  if constexpr (sizeof...(Args) == 0) {
    return f;
  } else {
    const int n = std::snprintf(nullptr, 0, f, args...);
    std::string out(static_cast<std::size_t>(std::max(n, 0)), '\0');
    std::snprintf(out.data(), out.size() + 1, f, args...);
    return out;
  }
}

inline double degrees(double rad) { return rad * 180.0 / kPi; }

/// "x rad (y deg)" for reports.
inline std::string angle_text(double rad) { return fmt("%.9f rad (%.6f deg)", rad, degrees(rad)); }

inline Check check(int criterion, std::string name, bool ok, std::string detail) {
  return Check{criterion, std::move(name), ok, std::move(detail)};
}

struct TracedCurve {
  Trace trace;
  CurveData data;
  ClassificationReport report;
};

inline TracedCurve trace_and_classify(const TraceRequest& req, const ClassifyOptions& options) {
  Trace tr = trace(req);
  CurveData data = curve_scalars(req.surface, tr.stations);
  ClassificationReport rep = classify_samples(data, options);
  return TracedCurve{std::move(tr), std::move(data), std::move(rep)};
}

/// Unit-vector distance up to sign.
inline double axis_distance(const Vec3& a, const Vec3& b) { return std::min((a - b).norm(), (a + b).norm()); }

inline double param(const ScenarioContext& ctx, const std::string& key, double fallback) {
  return ctx.config.get_double(key, fallback);
}

inline Vec2 param_vec2(const ScenarioContext& ctx, const std::string& key, const Vec2& fallback) {
  return ctx.config.get_vec2(key, fallback);
}

// Suites defined in corpus.cpp.
ScenarioReport run_frame_identities(const ScenarioContext& ctx);
ScenarioReport run_oracle_curvatures(const ScenarioContext& ctx);
ScenarioReport run_proposition_suite(const ScenarioContext& ctx);
ScenarioReport run_algebraic_identities(const ScenarioContext& ctx);

}  // namespace curvegeo::detail

namespace curvegeo::detail {

/// Comma-separated numbers from the config, or the fallback list.
inline std::vector<double> param_list(const ScenarioContext& ctx, const std::string& key,
                                      std::vector<double> fallback) {
  const auto v = ctx.config.get(key);
  if (!v) return fallback;
  std::vector<double> out;
  std::string item;
  for (char ch : *v + ",") {
    if (ch == ',') {
      out.push_back(io::parse_double(item, key));
      item.clear();
    } else {
      item += ch;
    }
  }
  return out;
}

}  // namespace curvegeo::detail
