#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "curvegeo/darboux.hpp"
#include "curvegeo/ode.hpp"
#include "curvegeo/surface.hpp"

namespace curvegeo {

/// Initial direction of a second-order trace: either an angle measured
/// from the principal direction E1 at the start, or a raw uv-velocity that
/// is rescaled to unit speed.
struct InitialDirection {
  std::optional<double> angle;
  std::optional<Vec2> uv_velocity;

  static InitialDirection from_angle(double a) { return {a, std::nullopt}; }
  static InitialDirection from_uv(const Vec2& v) { return {std::nullopt, v}; }
};

struct IsogonalMode {
  double phi = 0;
  double speed = 1;
};

struct PseudoGeodesicMode {
  double theta = 0;
  InitialDirection direction;
};

struct GeodesicMode {
  InitialDirection direction;
};

using TraceMode = std::variant<IsogonalMode, PseudoGeodesicMode, GeodesicMode>;

struct TraceRequest {
  SurfaceDef surface;
  Vec2 start_uv = Vec2::Zero();
  TraceMode mode = IsogonalMode{};
  double s_min = 0, s_max = 1;  // s_min <= 0 <= s_max
  double step = 1e-2;           // output grid spacing
  ode::Options tolerances;
};

enum class ExitKind { Completed, HitBoundary, HitUmbilic, SolverFailure };

const char* to_string(ExitKind kind);

struct TraceExit {
  ExitKind kind = ExitKind::Completed;
  double s_stop = 0;
};

struct Trace {
  TraceRequest request;
  std::vector<CurveStation> stations;  // ascending s on the grid k * step
  TraceExit forward, backward;

  /// First abnormal exit (forward side first), or Completed.
  TraceExit exit() const;
  bool completed() const { return exit().kind == ExitKind::Completed; }
};

/// Isogonal line through start_uv: solves X_t t' + X_z z' = |v|(cos(phi) E1 + sin(phi) E2)
/// in any regular chart, E1 kept sign-continuous along the flow.
Trace trace_isogonal(const TraceRequest& req);

/// Unit-speed curve with constant angle theta between its principal normal
/// and N (orthogonal charts only, |theta| < pi/2).
Trace trace_pseudogeodesic(const TraceRequest& req);

/// trace_pseudogeodesic with theta = 0.
Trace trace_geodesic(const TraceRequest& req);

/// Dispatch on the request's mode.
Trace trace(const TraceRequest& req);

/// Isogonal map: uv of gamma(1, p, v) where v = (dt, dz) is a chart
/// velocity at p. Throws BoundaryExit when the line leaves the domain first.
Vec2 isogonal_map(const SurfaceDef& surface, const Vec2& p_uv, const Vec2& v,
                  const ode::Options& tolerances = {});

/// Chart velocity of the unit tangent making angle `angle` with E1 at p.
Vec2 uv_direction(const SurfaceDef& surface, const Vec2& p_uv, double angle);

}  // namespace curvegeo
