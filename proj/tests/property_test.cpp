#include <doctest.h>

#include <random>

#include "curvegeo/gallery.hpp"
#include "curvegeo/numerics.hpp"
#include "curvegeo/tracer.hpp"
#include "test_util.hpp"


using namespace curvegeo;
using namespace curvegeo::numerics;
using testutil::near;

namespace {

std::vector<GallerySurface> gallery() {
  return {make_helix_surface(), make_enneper(),      make_crpc_revolution(2.0, 1),
          make_bonnet(0.5),     make_cylinder(1.0), make_catenoid()};
}

Vec2 random_point(const Domain& d, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.1, 0.9);
  return Vec2(d.t_min + u(rng) * (d.t_max - d.t_min), d.z_min + u(rng) * (d.z_max - d.z_min));
}

}  // namespace

TEST_CASE("Euler formula and second fundamental form agree in random directions") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (const GallerySurface& g : gallery()) {
    for (int k = 0; k < 50; ++k) {
      const Vec2 p = random_point(g.surface.domain(), rng);
      const SurfaceJet2 j = jet2(g.surface, p);
      const FundamentalForms ff = fundamental_forms(j);
      const ShapeData sd = shape_data(j, ff);
      if (sd.umbilic) continue;
      // random chart direction, normalized in the metric
      const double a = ang(rng);
      Vec2 v(std::cos(a), std::sin(a));
      v /= std::sqrt(ff.E * v.x() * v.x() + 2 * ff.F * v.x() * v.y() + ff.G * v.y() * v.y());
      const Vec3 dir = j.d_t * v.x() + j.d_z * v.y();
      const double second = ff.e * v.x() * v.x() + 2 * ff.f * v.x() * v.y() + ff.g * v.y() * v.y();
      const DirectionScalars ds = pointwise_direction_scalars(sd, dir);
      const double scale = 1 + std::abs(sd.kappa1) + std::abs(sd.kappa2);
      CHECK(near(ds.kn, second, 1e-12 * scale));
      CHECK(near(ds.kn, sd.kappa1 * std::pow(std::cos(ds.phi), 2) + sd.kappa2 * std::pow(std::sin(ds.phi), 2),
                 1e-12 * scale));
      CHECK(near(ds.taug, (sd.kappa1 - sd.kappa2) * std::cos(ds.phi) * std::sin(ds.phi), 1e-12 * scale));
    }
  }
}

TEST_CASE("random isogonal traces satisfy the frame identities") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ang(-1.4, 1.4);
  for (const GallerySurface& g : gallery()) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 p = random_point(g.surface.domain(), rng);
      const double phi = ang(rng);
      const Trace tr = trace(TraceRequest{g.surface, p, IsogonalMode{phi, 1.0}, -0.5, 0.5, 0.01, {}});
      const CurveData d = curve_scalars(g.surface, tr.stations);
      for (const CurveSample& s : d.samples) {
        CHECK(near(s.kappa * s.kappa, s.kg * s.kg + s.kn * s.kn, 1e-8 * (1 + s.kappa * s.kappa)));
        CHECK(near(*s.phi, phi, 1e-8));
        CHECK(near(s.tangent.norm(), 1, 1e-8));
        CHECK(near(s.tangent.dot(s.normal), 0, 1e-8));
      }
      for (double r : liouville_residuals(d, *g.oracle)) CHECK(std::abs(r) < 1e-6);
    }
  }
}

TEST_CASE("unwrap removes 2 pi jumps and wrap_angle lands in (-pi, pi]") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> step(-0.5, 0.5);
  std::vector<double> smooth{0.0}, wrapped;
  for (int k = 0; k < 500; ++k) smooth.push_back(smooth.back() + step(rng));
  for (double a : smooth) wrapped.push_back(wrap_angle(a));
  for (double a : wrapped) CHECK((a > -kPi && a <= kPi));
  const std::vector<double> back = unwrap(wrapped);
  for (std::size_t i = 0; i < smooth.size(); ++i) CHECK(near(back[i], smooth[i], 1e-12));
}

TEST_CASE("finite-difference derivatives are exact on low-degree polynomials") {
  std::vector<double> v;
  const double h = 0.1;
  for (int k = 0; k < 30; ++k) {
    const double x = k * h;
    v.push_back(1 - 2 * x + 0.5 * x * x * x);
  }
  const std::vector<double> d1 = uniform_derivative(v, h, 1), d2 = uniform_derivative(v, h, 2);
  for (int k = 0; k < 30; ++k) {
    const double x = k * h;
    CHECK(near(d1[k], -2 + 1.5 * x * x, 1e-10));
    CHECK(near(d2[k], 3 * x, 1e-9));
  }
}
