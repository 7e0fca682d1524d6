#include <doctest.h>

#include "curvegeo/gallery.hpp"
#include "curvegeo/intersect.hpp"
#include "test_util.hpp"

using namespace curvegeo;
using testutil::error_kind;
using testutil::kind;
using testutil::near;

TEST_CASE("sphere_plane fixture: circle of radius sqrt(3)/2 at height 1/2") {
  const IntersectionFixture f = make_fixture("sphere_plane", {{"h", 0.5}}, 128);
  for (const Vec3& p : f.curve.spatial) {
    CHECK(near(p.z(), 0.5, 1e-14));
    CHECK(near(std::hypot(p.x(), p.y()), std::sqrt(3.0) / 2, 1e-14));
  }
  const IntersectionReport r = analyze_intersection(f.m, f.mbar, f.curve);
  CHECK(r.constant_angle.is_constant);
  CHECK(r.pseudo_geodesic_m.is_constant);
  CHECK(r.pseudo_geodesic_mbar.is_constant);
  CHECK(r.relation_residual < 1e-6);
  CHECK(r.derivative_residual < 1e-6);
}

TEST_CASE("sphere_sphere fixture meets at constant angle pi/3") {
  const IntersectionFixture f = make_fixture("sphere_sphere", {{"d", 1.0}}, 128);
  for (const Vec3& p : f.curve.spatial) {
    CHECK(near(p.x(), 0.5, 1e-14));
    CHECK(near(std::hypot(p.y(), p.z()), std::sqrt(3.0) / 2, 1e-14));
  }
  const IntersectionReport r = analyze_intersection(f.m, f.mbar, f.curve);
  CHECK(r.constant_angle.is_constant);
  CHECK(near(r.constant_angle.mean, kPi / 3, 1e-12));
  CHECK(r.pseudo_geodesic_m.is_constant);
  CHECK(r.pseudo_geodesic_mbar.is_constant);
}

TEST_CASE("cylinder_plane fixture") {
  SUBCASE("tilted plane: angle varies, plane side pseudo-geodesic, cylinder side not") {
    const IntersectionFixture f = make_fixture("cylinder_plane", {{"tilt", 0.5}}, 256);
    const IntersectionReport r = analyze_intersection(f.m, f.mbar, f.curve);
    CHECK(!r.constant_angle.is_constant);
    CHECK(!r.pseudo_geodesic_m.is_constant);
    CHECK(r.pseudo_geodesic_mbar.is_constant);
    CHECK(r.relation_residual < 1e-6);
    CHECK(r.derivative_residual < 1e-6);
  }
  SUBCASE("horizontal plane: right angle everywhere") {
    const IntersectionFixture f = make_fixture("cylinder_plane", {{"tilt", 0.0}}, 128);
    const IntersectionReport r = analyze_intersection(f.m, f.mbar, f.curve);
    for (double xi : r.xi) CHECK(near(xi, kPi / 2, 1e-12));
  }
}

TEST_CASE("intersection errors") {
  CHECK(error_kind([] { make_fixture("torus_plane"); }) == kind(ErrorKind::UnknownFixture));
  const IntersectionFixture f = make_fixture("sphere_plane", {{"h", 0.5}}, 64);
  std::vector<Vec2> wrong = f.curve.uv_in_m;
  for (Vec2& p : wrong) p.x() += 0.1;
  CHECK(error_kind([&] { chart_stations(f.m, f.curve, wrong); }) == kind(ErrorKind::PreimageMismatch));
  // Tangent contact: analyze the sphere against itself.
  SharedCurve same = f.curve;
  same.uv_in_mbar = same.uv_in_m;
  CHECK(error_kind([&] { analyze_intersection(f.m, f.m, same); }) == kind(ErrorKind::Tangency));
}
