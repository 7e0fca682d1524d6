#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvegeo/classify.hpp"
#include "curvegeo/darboux.hpp"
#include "curvegeo/surface.hpp"

namespace curvegeo {

/// A unit-speed curve lying on two surfaces, sampled on a uniform s-grid,
/// with its preimage in each chart. Velocity and acceleration are spatial.
struct SharedCurve {
  double step = 0;
  std::vector<double> s;
  std::vector<Vec3> spatial, velocity, acceleration;
  std::vector<Vec2> uv_in_m, uv_in_mbar;
};

struct IntersectionFixture {
  std::string name;
  SurfaceDef m, mbar;
  SharedCurve curve;
};

struct IntersectionReport {
  std::vector<double> theta, theta_bar, xi;  // theta series unwrapped
  int eps = 1;
  bool eps_ambiguous = false;  // both signs fit at s = 0 (theta_bar = theta)
  double branch = 0;           // multiple of 2 pi absorbed by the relation
  double relation_residual = 0;    // max |xi - eps (theta_bar - theta) - branch|
  double derivative_residual = 0;  // max |xi' - eps (taug - taug_bar)|
  ConstancyVerdict constant_angle;
  ConstancyVerdict pseudo_geodesic_m, pseudo_geodesic_mbar;
  CurveData data_m, data_mbar;
};

/// Fixtures: sphere_plane (h), sphere_sphere (d), cylinder_plane (tilt).
/// `samples` points cover the closed curve once. Throws UnknownFixture.
IntersectionFixture make_fixture(const std::string& name, const std::map<std::string, double>& params = {},
                                 int samples = 512);

/// Chart stations (uv, uv', uv'') of a shared curve in one of its surfaces,
/// derivatives recovered from the spatial ones by least squares.
std::vector<CurveStation> chart_stations(const SurfaceDef& surface, const SharedCurve& curve,
                                         const std::vector<Vec2>& preimages);

/// Throws PreimageMismatch when a preimage misses the curve by more than
/// 1e-9 and Tangency when the normals meet at less than 1e-3 rad.
IntersectionReport analyze_intersection(const SurfaceDef& m, const SurfaceDef& mbar, const SharedCurve& curve,
                                        const ClassifyOptions& options = {});

}  // namespace curvegeo
