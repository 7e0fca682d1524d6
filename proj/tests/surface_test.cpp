#include <doctest.h>

#include "curvegeo/gallery.hpp"
#include "curvegeo/grid.hpp"
#include "test_util.hpp"

using namespace curvegeo;
using testutil::kind;
using testutil::near;
using testutil::rel_near;

TEST_CASE("enneper position at (1,0) is (2/3, 0, 1)") {
  const Vec3 p = make_enneper().surface.position(1, 0);
  CHECK(near(p.x(), 2.0 / 3.0, 1e-15));
  CHECK(near(p.y(), 0, 1e-15));
  CHECK(near(p.z(), 1, 1e-15));
  CHECK(make_enneper().surface.position(0, 0).norm() == 0);
}

TEST_CASE("plane chart has vanishing second derivatives and unit metric") {
  const SurfaceDef plane = make_plane();
  for (const Vec2 p : {Vec2(0, 0), Vec2(1.5, -2), Vec2(-3, 0.25)}) {
    const SurfaceJet2 j = jet2(plane, p);
    CHECK(j.d_tt.norm() == 0);
    CHECK(j.d_tz.norm() == 0);
    CHECK(j.d_zz.norm() == 0);
    const FundamentalForms ff = fundamental_forms(j);
    CHECK(ff.E == 1);
    CHECK(ff.G == 1);
    CHECK(ff.F == 0);
    CHECK(ff.e == 0);
    CHECK(ff.f == 0);
    CHECK(ff.g == 0);
    const ShapeData sd = shape_data(j, ff);
    CHECK(sd.kappa1 == 0);
    CHECK(sd.kappa2 == 0);
  }
}

TEST_CASE("sphere jet agrees with central differences of the position map") {
  const SurfaceDef s = make_sphere(1.0);
  const double t = kPi / 4, z = kPi / 3, h = 1e-4;
  auto X = [&](double a, double b) { return s.position(a, b); };
  const SurfaceJet2 j = jet2(s, Vec2(t, z));
  CHECK((j.d_t - (X(t + h, z) - X(t - h, z)) / (2 * h)).norm() < 1e-6);
  CHECK((j.d_z - (X(t, z + h) - X(t, z - h)) / (2 * h)).norm() < 1e-6);
  CHECK((j.d_tt - (X(t + h, z) - 2 * X(t, z) + X(t - h, z)) / (h * h)).norm() < 1e-6);
  CHECK((j.d_zz - (X(t, z + h) - 2 * X(t, z) + X(t, z - h)) / (h * h)).norm() < 1e-6);
  const Vec3 mixed = (X(t + h, z + h) - X(t + h, z - h) - X(t - h, z + h) + X(t - h, z - h)) / (4 * h * h);
  CHECK((j.d_tz - mixed).norm() < 1e-6);
}

TEST_CASE("enneper metric is conformal: E = G = (1+t^2+z^2)^2, F = 0") {
  const SurfaceDef s = make_enneper().surface;
  for (const Vec2 p : {Vec2(0, 0), Vec2(1, 1), Vec2(-0.7, 0.4), Vec2(1.5, -1.2)}) {
    const FundamentalForms ff = fundamental_forms(jet2(s, p));
    const double w = std::pow(1 + p.squaredNorm(), 2);
    CHECK(rel_near(ff.E, w, 1e-14));
    CHECK(rel_near(ff.G, w, 1e-14));
    CHECK(near(ff.F, 0, 1e-14 * w));
  }
}

TEST_CASE("sphere normal curvatures are equal with |kn| = 1/r") {
  // Both principal directions bend equally on a sphere, so e/E = g/G.
  const SurfaceDef s = make_sphere(2.0);
  for (const Vec2 p : {Vec2(0, 0), Vec2(1.0, 0), Vec2(-2.0, 0.7)}) {
    const FundamentalForms ff = fundamental_forms(jet2(s, p));
    CHECK(near(ff.e / ff.E, ff.g / ff.G, 1e-14));
    CHECK(near(std::abs(ff.e / ff.E), 0.5, 1e-14));
    const ShapeData sd = shape_data_at(s, p);
    CHECK(sd.umbilic);
    CHECK(sd.kappa1 == doctest::Approx(sd.kappa2));
    CHECK(near(std::abs(sd.kappa1), 0.5, 1e-14));
  }
}

TEST_CASE("principal curvatures at the enneper origin are -2 and 2") {
  const ShapeData sd = shape_data_at(make_enneper().surface, Vec2(0, 0));
  CHECK(near(sd.kappa1, -2, 1e-14));
  CHECK(near(sd.kappa2, 2, 1e-14));
  CHECK(!sd.umbilic);
}

TEST_CASE("bonnet a = 1/2 at the origin") {
  const GallerySurface b = make_bonnet(0.5);
  const ShapeData sd = shape_data_at(b.surface, Vec2(0, 0));
  CHECK(near(sd.kappa2, 1.0 / 3.0, 1e-14));
  CHECK(near(sd.kappa1, -1.0 / 3.0, 1e-14));
  const OracleValues o = b.oracle->values(Vec2(0, 0));
  CHECK(near(o.k2, 1.0 / 3.0, 1e-15));
  CHECK(near(o.k1, -1.0 / 3.0, 1e-15));
  CHECK(o.kg1 == 0);
  CHECK(o.kg2 == 0);
}

TEST_CASE("helix surface oracle and flatness") {
  const GallerySurface h = make_helix_surface(1.0, kPi / 4);
  const OracleValues o = h.oracle->values(Vec2(0, 0));
  CHECK(near(o.k1, -std::sqrt(2.0) / 2, 1e-15));
  CHECK(o.k2 == 0);
  for (const Vec2& p : grid_points(h.surface.domain(), 8, 8, 0.05)) {
    CHECK(h.oracle->values(p).kg2 == 0);
    const ShapeData sd = shape_data_at(h.surface, p);
    CHECK(near(sd.gaussian, 0, 1e-12));
  }
}

TEST_CASE("enneper oracle at (1,1)") {
  const OracleValues o = make_enneper().oracle->values(Vec2(1, 1));
  CHECK(near(o.k1, 2.0 / 9.0, 1e-15));
  CHECK(near(o.kg1, -2.0 / 9.0, 1e-15));
  CHECK(near(o.kg2, 2.0 / 9.0, 1e-15));
}

TEST_CASE("minimal gallery surfaces have zero mean curvature") {
  for (const GallerySurface& g : {make_enneper(), make_bonnet(0.5), make_catenoid()}) {
    for (const Vec2& p : grid_points(g.surface.domain(), 10, 10, 0.05)) {
      const ShapeData sd = shape_data_at(g.surface, p);
      CHECK(near(sd.mean, 0, 1e-12 * (std::abs(sd.kappa1) + std::abs(sd.kappa2))));
    }
  }
}

TEST_CASE("crpc revolution: principal curvature ratio c and normal near the rim") {
  const double c = 2.0;
  const GallerySurface g = make_crpc_revolution(c, 1);
  for (const Vec2& p : grid_points(g.surface.domain(), 8, 8, 0.0)) {
    const ShapeData sd = shape_data_at(g.surface, p);
    const double big = std::max(std::abs(sd.kappa1), std::abs(sd.kappa2));
    const double small = std::min(std::abs(sd.kappa1), std::abs(sd.kappa2));
    CHECK(rel_near(big / small, c, 1e-8));
    CHECK(sd.kappa1 * sd.kappa2 > 0);
  }
  // Third component sqrt(1 - t^(2c)) of the published normal vanishes as t -> 1.
  double last = 1;
  for (double t : {0.9, 0.99, 0.999, 0.9999}) {
    const double nz = std::abs(g.oracle->frame(Vec2(t, 0.3)).normal.z());
    CHECK(nz < last);
    last = nz;
  }
  CHECK(last < 0.02);
  CHECK(testutil::error_kind([&] { jet2(g.surface, Vec2(1.0, 0)); }) == kind(ErrorKind::OutOfDomain));
}

TEST_CASE("cylinder is flat with one vanishing principal curvature") {
  const GallerySurface g = make_cylinder(1.0);
  for (const Vec2& p : grid_points(g.surface.domain(), 5, 5, 0.1)) {
    const ShapeData sd = shape_data_at(g.surface, p);
    CHECK(near(sd.gaussian, 0, 1e-15));
    CHECK(std::min(std::abs(sd.kappa1), std::abs(sd.kappa2)) < 1e-15);
    CHECK(near(std::max(std::abs(sd.kappa1), std::abs(sd.kappa2)), 1, 1e-14));
  }
}

TEST_CASE("degenerate gallery parameters") {
  using testutil::error_kind;
  const int degenerate = kind(ErrorKind::DegenerateParameter);
  CHECK(error_kind([] { make_bonnet(0.0); }) == degenerate);
  CHECK(error_kind([] { make_bonnet(1.0); }) == degenerate);
  CHECK(error_kind([] { make_bonnet(1.5); }) == degenerate);
  CHECK(error_kind([] { make_helix_surface(1.0, 0.0); }) == degenerate);
  CHECK(error_kind([] { make_helix_surface(1.0, kPi / 2); }) == degenerate);
  CHECK(error_kind([] { make_gallery_surface("torus"); }) == kind(ErrorKind::UnknownSurface));
}

TEST_CASE("jet errors: outside the domain and singular charts") {
  using testutil::error_kind;
  const SurfaceDef e = make_enneper().surface;
  CHECK(error_kind([&] { jet2(e, Vec2(5, 0)); }) == kind(ErrorKind::OutOfDomain));
  const SurfaceDef folded("folded", Domain{-1, 1, -1, 1}, [](double t, double z) {
    SurfaceJet2 j;
    j.position = Vec3(t + z, t + z, 0);
    j.d_t = Vec3(1, 1, 0);
    j.d_z = Vec3(1, 1, 0);
    return j;
  }, false);
  CHECK(error_kind([&] { jet2(folded, Vec2(0, 0)); }) == kind(ErrorKind::SingularJet));
}

TEST_CASE("finite-difference jets match analytic ones") {
  const SurfaceDef analytic = make_enneper().surface;
  const SurfaceDef numeric =
      SurfaceDef::from_position("enneper-fd", analytic.domain(), [&](double t, double z) { return analytic.position(t, z); },
                                true);
  CHECK(numeric.jet_source() == JetSource::FiniteDifference);
  const Vec2 p(0.4, -0.3);
  const ShapeData a = shape_data_at(analytic, p), n = shape_data_at(numeric, p);
  CHECK(near(a.kappa1, n.kappa1, 1e-5));
  CHECK(near(a.kappa2, n.kappa2, 1e-5));
}

TEST_CASE("principal frame is orthonormal with E1 x E2 = N") {
  for (const GallerySurface& g : {make_enneper(), make_bonnet(0.5), make_catenoid(), make_helix_surface()}) {
    for (const Vec2& p : grid_points(g.surface.domain(), 6, 6, 0.05)) {
      const ShapeData sd = shape_data_at(g.surface, p);
      CHECK(near(sd.e1.norm(), 1, 1e-14));
      CHECK(near(sd.e2.norm(), 1, 1e-14));
      CHECK(near(sd.e1.dot(sd.normal), 0, 1e-14));
      CHECK((sd.e1.cross(sd.e2) - sd.normal).norm() < 1e-13);
      CHECK(sd.kappa1 <= sd.kappa2);
    }
  }
}
