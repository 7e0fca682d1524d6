#include <doctest.h>

#include <map>

#include "curvegeo/classify.hpp"
#include "curvegeo/gallery.hpp"
#include "curvegeo/tracer.hpp"
#include "test_util.hpp"

using namespace curvegeo;
using testutil::error_kind;
using testutil::kind;
using testutil::near;

namespace {

const GallerySurface& enneper() {
  static const GallerySurface g = make_enneper();
  return g;
}

double paper_phi_on_enneper() { return enneper().oracle->engine_phi(kPi / 6, Vec2(0, 1)); }

std::map<long, Vec3> by_grid(const Trace& tr, double step) {
  std::map<long, Vec3> out;
  for (const CurveStation& s : tr.stations) out[std::lround(s.s / step)] = tr.request.surface.position(s.uv.x(), s.uv.y());
  return out;
}

}  // namespace

TEST_CASE("enneper isogonal lies on the line z = tan(phi) t + n") {
  const Trace tr = trace(TraceRequest{enneper().surface, Vec2(0, 1), IsogonalMode{paper_phi_on_enneper(), 1.0}, -1, 1,
                                      0.01, {}});
  CHECK(tr.completed());
  CHECK(tr.stations.size() == 201);
  for (const CurveStation& s : tr.stations) CHECK(near(s.uv.y() - std::tan(kPi / 6) * s.uv.x() - 1, 0, 1e-8));
}

TEST_CASE("phi = 0 follows the z = const line of curvature") {
  const Trace tr = trace(TraceRequest{make_bonnet(0.5).surface, Vec2(0.1, 0.4), IsogonalMode{0.0, 1.0}, -0.8, 0.8, 0.01, {}});
  for (const CurveStation& s : tr.stations) CHECK(near(s.uv.y(), 0.4, 1e-10));
}

TEST_CASE("isogonal flow is homogeneous in the speed") {
  const double phi = paper_phi_on_enneper();
  const Trace slow = trace(TraceRequest{enneper().surface, Vec2(0, 1), IsogonalMode{phi, 1.0}, 0, 2, 0.01, {}});
  const Trace fast = trace(TraceRequest{enneper().surface, Vec2(0, 1), IsogonalMode{phi, 2.0}, 0, 1, 0.005, {}});
  const auto a = by_grid(slow, 0.01), b = by_grid(fast, 0.005);
  REQUIRE(a.size() == b.size());
  for (const auto& [k, p] : a) CHECK((p - b.at(k)).norm() < 1e-8);
}

TEST_CASE("theta = 0 pseudo-geodesic is the geodesic") {
  const InitialDirection dir = InitialDirection::from_angle(0.7);
  const Trace pg = trace(TraceRequest{enneper().surface, Vec2(0.2, 0.3), PseudoGeodesicMode{0.0, dir}, -1, 1, 0.01, {}});
  const Trace g = trace(TraceRequest{enneper().surface, Vec2(0.2, 0.3), GeodesicMode{dir}, -1, 1, 0.01, {}});
  REQUIRE(pg.stations.size() == g.stations.size());
  for (std::size_t i = 0; i < g.stations.size(); ++i) CHECK((pg.stations[i].uv - g.stations[i].uv).norm() < 1e-9);
}

TEST_CASE("sphere pseudo-geodesic with theta = pi/4 is a circle") {
  // Third differences amplify integration error by 1/h^3, so trace tightly for the Frenet oracle.
  ode::Options tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-13;
  const Trace tr = trace(TraceRequest{make_sphere(1.0), Vec2(0.3, 0.1),
                                      PseudoGeodesicMode{kPi / 4, InitialDirection::from_uv(Vec2(1, 0.3))}, -1, 1, 0.02,
                                      tight});
  const CurveData d = curve_scalars(tr.request.surface, tr.stations);
  std::vector<Vec3> pos;
  for (const CurveSample& s : d.samples) pos.push_back(s.pos);
  for (const FrenetSample& f : frenet_apparatus(pos, d.step)) {
    CHECK(near(f.kappa, std::sqrt(2.0), 1e-5));
    CHECK(near(f.tau, 0, 1e-5));
  }
  for (const CurveSample& s : d.samples) {
    CHECK(near(s.kappa, std::sqrt(2.0), 1e-8));
    CHECK(near(s.tau, 0, 1e-6));
  }
}

TEST_CASE("enneper pseudo-geodesic with tan(theta) = -sqrt(3) reproduces the isogonal") {
  const double phi = paper_phi_on_enneper();
  const Trace iso = trace(TraceRequest{enneper().surface, Vec2(0, 1), IsogonalMode{phi, 1.0}, -1, 1, 0.01, {}});
  const Vec2 v = iso.stations[100].uv_vel;
  REQUIRE(iso.stations[100].s == 0);
  const Trace pg = trace(TraceRequest{enneper().surface, Vec2(0, 1),
                                      PseudoGeodesicMode{std::atan(-std::sqrt(3.0)), InitialDirection::from_uv(v)}, -1, 1,
                                      0.01, {}});
  const auto a = by_grid(iso, 0.01), b = by_grid(pg, 0.01);
  REQUIRE(a.size() == b.size());
  for (const auto& [k, p] : a) CHECK((p - b.at(k)).norm() < 1e-6);
}

TEST_CASE("plane geodesics are straight lines and sphere geodesics great circles") {
  const Trace line = trace(TraceRequest{make_plane(), Vec2(0.5, -1), GeodesicMode{InitialDirection::from_uv(Vec2(3, 4))},
                                        -2, 2, 0.05, {}});
  for (const CurveStation& s : line.stations) {
    CHECK((s.uv - Vec2(0.5 + 0.6 * s.s, -1 + 0.8 * s.s)).norm() < 1e-12);
  }
  const Trace gc = trace(TraceRequest{make_sphere(1.0), Vec2(0.3, 0.2),
                                      GeodesicMode{InitialDirection::from_uv(Vec2(1, 1))}, -1, 1, 0.01, {}});
  const CurveData d = curve_scalars(gc.request.surface, gc.stations);
  for (const CurveSample& s : d.samples) {
    CHECK(near(s.kappa, 1, 1e-8));
    CHECK(near(s.tau, 0, 1e-6));
    CHECK(near(s.pos.norm(), 1, 1e-12));
  }
}

TEST_CASE("enneper geodesics through the origin match the closed-form family") {
  for (double m : {0.0, 0.5, -1.5}) {
    const Trace tr = trace(TraceRequest{enneper().surface, Vec2(0, 0), GeodesicMode{InitialDirection::from_uv(Vec2(1, m))},
                                        -1, 1, 0.01, {}});
    for (const CurveStation& s : tr.stations) {
      const double t = s.uv.x();
      const Vec3 closed = Vec3(3 * t + (3 * m * m - 1) * t * t * t, m * (3 * t - (m * m - 3) * t * t * t),
                               3 * (1 - m * m) * t * t) / 3;
      CHECK((tr.request.surface.position(t, s.uv.y()) - closed).norm() < 1e-6);
      CHECK(near(s.uv.y(), m * t, 1e-6));
    }
  }
}

TEST_CASE("isogonal map: zero vector and Jacobian at the origin") {
  const SurfaceDef& s = enneper().surface;
  const Vec2 p(0.3, 0.2);
  CHECK((isogonal_map(s, p, Vec2::Zero()) - p).norm() == 0);
  const double h = 1e-4;
  for (const Vec2& col : {Vec2(1, 0), Vec2(0, 1)}) {
    const Vec2 d = (isogonal_map(s, p, h * col) - isogonal_map(s, p, -h * col)) / (2 * h);
    CHECK((d - col).norm() < 1e-4);
  }
  CHECK(error_kind([&] { isogonal_map(s, p, Vec2(50, 0)); }) == kind(ErrorKind::BoundaryExit));
}

TEST_CASE("boundary exit truncates instead of failing") {
  const Trace tr = trace(TraceRequest{enneper().surface, Vec2(0, 1), IsogonalMode{0.3, 1.0}, -100, 100, 0.01, {}});
  CHECK(tr.exit().kind == ExitKind::HitBoundary);
  CHECK(!tr.completed());
  CHECK(tr.stations.size() > 100);
  for (const CurveStation& s : tr.stations) CHECK(tr.request.surface.domain().contains(s.uv));
}

TEST_CASE("tracer errors") {
  const SurfaceDef& s = enneper().surface;
  const InitialDirection dir = InitialDirection::from_angle(0.2);
  CHECK(error_kind([&] { trace(TraceRequest{s, Vec2(0, 0), PseudoGeodesicMode{kPi / 2, dir}, -1, 1, 0.01, {}}); }) ==
        kind(ErrorKind::ThetaOutOfRange));
  const SurfaceDef skew = SurfaceDef::from_position(
      "skew", Domain{-1, 1, -1, 1}, [](double t, double z) { return Vec3(t + 0.5 * z, z, 0.1 * t * z); }, false);
  CHECK(error_kind([&] { trace(TraceRequest{skew, Vec2(0, 0), PseudoGeodesicMode{0.3, dir}, -1, 1, 0.01, {}}); }) ==
        kind(ErrorKind::NonOrthogonalChart));
  CHECK(error_kind([&] {
          trace(TraceRequest{make_sphere(1.0), Vec2(0, 0), IsogonalMode{0.3, 1.0}, -1, 1, 0.01, {}});
        }) == kind(ErrorKind::UmbilicEncountered));
  CHECK(error_kind([&] { trace(TraceRequest{s, Vec2(9, 0), IsogonalMode{0.3, 1.0}, -1, 1, 0.01, {}}); }) ==
        kind(ErrorKind::OutOfDomain));
  CHECK(error_kind([&] { trace(TraceRequest{s, Vec2(0, 0), IsogonalMode{0.3, 1.0}, 0.5, 1, 0.01, {}}); }) ==
        kind(ErrorKind::InvalidArgument));
}
