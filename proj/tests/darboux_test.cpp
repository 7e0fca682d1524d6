#include <doctest.h>

#include "curvegeo/gallery.hpp"
#include "curvegeo/tracer.hpp"
#include "test_util.hpp"

using namespace curvegeo;
using testutil::error_kind;
using testutil::kind;
using testutil::near;

namespace {

// Unit-speed circle of radius r in the plane chart.
std::vector<CurveStation> circle_stations(double r, int n, double step) {
  std::vector<CurveStation> st;
  for (int k = 0; k < n; ++k) {
    const double s = k * step, a = s / r;
    st.push_back({s, Vec2(r * std::cos(a), r * std::sin(a)), Vec2(-std::sin(a), std::cos(a)),
                  Vec2(-std::cos(a), -std::sin(a)) / r});
  }
  return st;
}

Trace enneper_isogonal(double engine_phi, const Vec2& start, double span = 1.0) {
  return trace(TraceRequest{make_enneper().surface, start, IsogonalMode{engine_phi, 1.0}, -span, span, 0.01, {}});
}

}  // namespace

TEST_CASE("principal direction E1 has kn = kappa1, taug = 0, phi = 0") {
  const ShapeData sd = shape_data_at(make_bonnet(0.5).surface, Vec2(0.3, 0.2));
  const DirectionScalars ds = pointwise_direction_scalars(sd, sd.e1);
  CHECK(near(ds.kn, sd.kappa1, 1e-15));
  CHECK(near(ds.taug, 0, 1e-15));
  CHECK(near(ds.phi, 0, 1e-15));
}

TEST_CASE("enneper origin at phi = pi/4 is asymptotic with taug = -2") {
  const ShapeData sd = shape_data_at(make_enneper().surface, Vec2(0, 0));
  const Vec3 dir = std::cos(kPi / 4) * sd.e1 + std::sin(kPi / 4) * sd.e2;
  const DirectionScalars ds = pointwise_direction_scalars(sd, dir);
  CHECK(near(ds.kn, 0, 1e-14));
  CHECK(near(ds.taug, -2, 1e-14));
  CHECK(near(ds.phi, kPi / 4, 1e-15));
}

TEST_CASE("direction scalars errors") {
  const ShapeData sphere = shape_data_at(make_sphere(1.0), Vec2(0.2, 0.1));
  CHECK(error_kind([&] { pointwise_direction_scalars(sphere, sphere.e1); }) == kind(ErrorKind::UmbilicPoint));
  const ShapeData sd = shape_data_at(make_enneper().surface, Vec2(0.2, 0.1));
  CHECK(error_kind([&] { pointwise_direction_scalars(sd, sd.normal); }) == kind(ErrorKind::NonTangentDirection));
}

TEST_CASE("plane circle: kappa = 1/r, tau = 0, kn = 0, |theta| = pi/2") {
  const double r = 2.0;
  const CurveData d = curve_scalars(make_plane(), circle_stations(r, 100, 0.05));
  for (const CurveSample& s : d.samples) {
    CHECK(near(s.kappa, 1 / r, 1e-14));
    CHECK(near(s.tau, 0, 1e-12));
    CHECK(near(s.kn, 0, 1e-15));
    CHECK(near(std::abs(s.theta), kPi / 2, 1e-14));
  }
}

TEST_CASE("circular helix of pitch angle pi/4 on the unit cylinder") {
  std::vector<CurveStation> st;
  const double c = 1 / std::sqrt(2.0);
  for (int k = 0; k < 80; ++k) {
    const double s = 0.05 * k;
    st.push_back({s, Vec2(c * s, c * s), Vec2(c, c), Vec2(0, 0)});
  }
  const CurveData d = curve_scalars(make_cylinder(1.0).surface, st);
  for (const CurveSample& s : d.samples) {
    CHECK(near(s.kappa, 0.5, 1e-14));
    CHECK(near(std::abs(s.tau), 0.5, 1e-8));
  }
}

TEST_CASE("curve_scalars rejects non-unit speed and records umbilic stations") {
  std::vector<CurveStation> st = circle_stations(1.0, 12, 0.1);
  for (auto& s : st) s.uv_vel *= 2;
  CHECK(error_kind([&] { curve_scalars(make_plane(), st); }) == kind(ErrorKind::NonUnitSpeed));

  // Equator of the unit sphere: every station is umbilic, phi undefined, the rest computed.
  std::vector<CurveStation> eq;
  for (int k = 0; k < 12; ++k) eq.push_back({0.1 * k, Vec2(0.1 * k, 0), Vec2(1, 0), Vec2(0, 0)});
  const CurveData d = curve_scalars(make_sphere(1.0), eq);
  CHECK(d.umbilic_stations.size() == eq.size());
  for (const CurveSample& s : d.samples) {
    CHECK(!s.phi);
    CHECK(near(s.kappa, 1, 1e-14));
    CHECK(near(s.kg, 0, 1e-14));
  }
}

TEST_CASE("geodesics have kg = 0, theta = 0 and tau = taug") {
  const Trace tr = trace(TraceRequest{make_bonnet(0.5).surface, Vec2(0, 0.3),
                                      GeodesicMode{InitialDirection::from_angle(0.3)}, -1, 1, 0.01, {}});
  const CurveData d = curve_scalars(tr.request.surface, tr.stations);
  for (const CurveSample& s : d.samples) {
    CHECK(near(s.kg, 0, 1e-8));
    CHECK(near(std::remainder(s.theta, kPi), 0, 1e-7));
    CHECK(near(s.tau, s.taug, 1e-6));
  }
}

TEST_CASE("frenet apparatus") {
  std::vector<Vec3> line;
  for (int k = 0; k < 20; ++k) line.push_back(Vec3(0.1 * k, 0.05 * k, 0));
  CHECK(error_kind([&] { frenet_apparatus(line, 0.1); }) == kind(ErrorKind::VanishingCurvature));

  std::vector<Vec3> circle;
  const double step = 0.01;
  for (int k = 0; k < 400; ++k) circle.push_back(Vec3(2 * std::cos(k * step / 2), 2 * std::sin(k * step / 2), 0));
  for (const FrenetSample& f : frenet_apparatus(circle, step)) {
    CHECK(near(f.kappa, 0.5, 1e-6));
    CHECK(near(f.tau, 0, 1e-6));
  }

  // Finite-difference Frenet data is the oracle for the Darboux-derived kappa and tau.
  const GallerySurface en = make_enneper();
  const Trace tr = enneper_isogonal(en.oracle->engine_phi(kPi / 6, Vec2(0, 1)), Vec2(0, 1));
  const CurveData d = curve_scalars(tr.request.surface, tr.stations);
  std::vector<Vec3> pos;
  for (const CurveSample& s : d.samples) pos.push_back(s.pos);
  const std::vector<FrenetSample> fr = frenet_apparatus(pos, d.step);
  for (std::size_t i = 0; i < fr.size(); ++i) {
    const CurveSample& s = d.samples[i];
    CHECK(testutil::rel_near(fr[i].kappa, s.kappa, 1e-5));
    CHECK(testutil::rel_near(fr[i].tau, s.tau, 1e-5));
    const FrenetSample df = darboux_frenet(s);
    CHECK((df.tangent - s.tangent).norm() < 1e-14);
  }
}

TEST_CASE("Liouville residuals") {
  SUBCASE("enneper isogonal") {
    const GallerySurface en = make_enneper();
    const Trace tr = enneper_isogonal(0.4, Vec2(0.2, 0.5));
    for (double r : liouville_residuals(curve_scalars(tr.request.surface, tr.stations), *en.oracle)) {
      CHECK(std::abs(r) < 1e-6);
    }
  }
  SUBCASE("coordinate curve z = const") {
    const GallerySurface en = make_enneper();
    // published E1 is the t direction; the engine labels by kappa1 <= kappa2
    const Trace tr = enneper_isogonal(en.oracle->engine_phi(0.0, Vec2(0.1, 0.7)), Vec2(0.1, 0.7), 0.5);
    const CurveData d = curve_scalars(tr.request.surface, tr.stations);
    for (const CurveSample& s : d.samples) CHECK(near(s.uv.y(), 0.7, 1e-10));
    for (double r : liouville_residuals(d, *en.oracle)) CHECK(std::abs(r) < 1e-6);
  }
  SUBCASE("helix-surface isogonal") {
    const GallerySurface h = make_helix_surface();
    const Trace tr = trace(TraceRequest{h.surface, Vec2(0, 0), IsogonalMode{0.7, 1.0}, -1, 1, 0.01, {}});
    for (double r : liouville_residuals(curve_scalars(tr.request.surface, tr.stations), *h.oracle)) {
      CHECK(std::abs(r) < 1e-6);
    }
  }
}
