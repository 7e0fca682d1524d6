#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvegeo/gallery.hpp"
#include "curvegeo/surface.hpp"

namespace curvegeo {

/// One chart-level station of a curve: the preimage at arc length s with
/// its first two s-derivatives.
struct CurveStation {
  double s = 0;
  Vec2 uv = Vec2::Zero();
  Vec2 uv_vel = Vec2::Zero();
  Vec2 uv_acc = Vec2::Zero();
};

/// Frenet and Darboux data at one station. Torsion follows B' = +tau N.
struct CurveSample {
  double s = 0;
  Vec2 uv = Vec2::Zero(), uv_vel = Vec2::Zero(), uv_acc = Vec2::Zero();
  Vec3 pos = Vec3::Zero();
  Vec3 tangent = Vec3::UnitX();
  Vec3 normal = Vec3::UnitZ();  // Gauss map at the station
  Vec3 e1 = Vec3::UnitX();      // principal frame, sign-continuous along the curve
  bool e1_flipped = false;      // e1 opposite to the shape_data default sign
  double kappa1 = 0, kappa2 = 0;
  double kg = 0, kn = 0, taug = 0;
  std::optional<double> phi;  // empty at umbilic stations
  double theta = 0;           // unwrapped along the curve
  double kappa = 0, tau = 0;
};

struct FrenetSample {
  Vec3 tangent, principal_normal, binormal;
  double kappa = 0, tau = 0;
};

/// Result of curve_scalars. Umbilic stations keep every scalar except phi.
struct CurveData {
  double step = 0;
  std::vector<CurveSample> samples;
  std::vector<std::size_t> umbilic_stations;
};

struct DirectionScalars {
  double kn = 0, taug = 0, phi = 0;
};

/// kn and taug of a unit tangent direction from the principal
/// decomposition. Throws UmbilicPoint and NonTangentDirection.
DirectionScalars pointwise_direction_scalars(const ShapeData& sd, const Vec3& dir);

/// Darboux and Frenet scalars along a unit-speed curve sampled on a uniform
/// s-grid (at least five stations). theta' uses fourth-order differences.
CurveData curve_scalars(const SurfaceDef& surface, std::span<const CurveStation> stations);

/// Finish a CurveData whose per-station fields (uv, pos, tangent, frame,
/// kg, kn, taug, phi) are filled: unwraps theta and computes tau.
void complete_torsion(CurveData& data);

/// Independent Frenet apparatus from positions alone (uniform grid, at
/// least seven samples). Throws VanishingCurvature when |kappa| <= 1e-6.
std::vector<FrenetSample> frenet_apparatus(std::span<const Vec3> positions, double step);

/// Frenet frame assembled from Darboux data (T, theta, N), no differencing.
FrenetSample darboux_frenet(const CurveSample& sample);

/// kg - (phi' + cos(phi) kg1 + sin(phi) kg2) with kg1, kg2 in the engine
/// labeling at the station.
double liouville_residual(const CurveSample& sample, double phi_prime, const OracleValues& engine_oracle);

/// Liouville residual at every station; phi' from differences of the
/// unwrapped phi series. Empty when any station is umbilic.
std::vector<double> liouville_residuals(const CurveData& data, const GalleryOracle& oracle);

}  // namespace curvegeo
