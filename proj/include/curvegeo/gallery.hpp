#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "curvegeo/surface.hpp"

namespace curvegeo {

/// Closed-form curvature data in the labeling the formulas were published
/// in: index 1 is the t-coordinate line of curvature, index 2 the
/// z-coordinate line. That labeling can violate kappa1 <= kappa2.
struct OracleValues {
  double kg1 = 0, kg2 = 0;  // geodesic curvature of the lines of curvature
  double k1 = 0, k2 = 0;    // principal curvatures
};

struct OracleFrame {
  Vec3 normal, e1, e2;
};

struct GalleryOracle {
  std::function<OracleValues(const Vec2&)> values;
  std::function<OracleFrame(const Vec2&)> frame;  // empty when not published

  /// True when the published index 1 is the engine's E2 (k1 > k2).
  bool swapped(const Vec2& uv) const;

  /// Values relabeled to the engine's principal frame (kappa1 <= kappa2,
  /// E1 signed as in shape_data).
  OracleValues engine_values(const Vec2& uv) const;

  /// Angle from the published E1 converted to the angle from engine E1.
  double engine_phi(double published_phi, const Vec2& uv) const;
};

struct GallerySurface {
  SurfaceDef surface;
  std::optional<GalleryOracle> oracle;
};

/// Circle of radius r_beta in the plane orthogonal to V = (0,0,1), swept
/// along cos(phi0) N_beta + sin(phi0) V with N_beta the inward normal.
GallerySurface make_helix_surface(double r_beta = 1.0, double phi0 = kPi / 4);

GallerySurface make_enneper(double half_width = 2.0);

/// Surface of revolution with kappa_meridian = c * kappa_parallel.
GallerySurface make_crpc_revolution(double c = 2.0, int eps = 1);

GallerySurface make_bonnet(double a = 0.5);

GallerySurface make_cylinder(double r = 1.0);

GallerySurface make_catenoid();

SurfaceDef make_sphere(double r = 1.0, const Vec3& center = Vec3::Zero());

/// Plane through `origin` spanned by orthonormal u, w; normal u x w.
SurfaceDef make_plane(const Vec3& origin = Vec3::Zero(), const Vec3& u = Vec3::UnitX(),
                      const Vec3& w = Vec3::UnitY());

/// Third coordinate of the CRPC profile, eps * integral_1^t u^c (1-u^2c)^(-1/2) du.
double crpc_profile_height(double t, double c, int eps);

/// Factory by name: helix, enneper, crpc, bonnet, cylinder, catenoid,
/// sphere, plane. Unknown parameters are ignored; missing ones default.
GallerySurface make_gallery_surface(const std::string& name,
                                    const std::map<std::string, double>& params = {});

}  // namespace curvegeo
