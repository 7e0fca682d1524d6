#include "curvegeo/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "curvegeo/errors.hpp"
#include "curvegeo/gallery.hpp"
#include "curvegeo/numerics.hpp"

namespace curvegeo {

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

// Circle of radius rho: center + rho (cos a e1 + sin a e2), a = s / rho.
void sample_circle(SharedCurve& c, const Vec3& center, const Vec3& e1, const Vec3& e2, double rho, int samples) {
  const double length = 2 * kPi * rho;
  c.step = length / samples;
  for (int k = 0; k < samples; ++k) {
    const double s = k * c.step;
    const double a = s / rho;
    const Vec3 radial = std::cos(a) * e1 + std::sin(a) * e2;
    c.s.push_back(s);
    c.spatial.push_back(center + rho * radial);
    c.velocity.push_back(-std::sin(a) * e1 + std::cos(a) * e2);
    c.acceleration.push_back(-radial / rho);
  }
}

// Preimage in the sphere chart c + r(cos t cos z, sin t cos z, sin z) with t
// kept continuous (branch chosen near t_center).
Vec2 sphere_preimage(const Vec3& p, const Vec3& center, double r, double t_center) {
  const Vec3 q = (p - center) / r;
  const double z = std::asin(std::clamp(q.z(), -1.0, 1.0));
  double t = std::atan2(q.y(), q.x());
  while (t - t_center > kPi) t -= 2 * kPi;
  while (t - t_center < -kPi) t += 2 * kPi;
  return Vec2(t, z);
}

IntersectionFixture sphere_plane(double h, int samples) {
  if (!(std::abs(h) < std::sin(1.4))) {
    throw GeometryError(ErrorKind::DegenerateParameter, "sphere_plane needs |h| < sin(1.4)");
  }
  IntersectionFixture f{"sphere_plane", make_sphere(1.0), make_plane(Vec3(0, 0, h)), {}};
  const double rho = std::sqrt(1 - h * h);
  sample_circle(f.curve, Vec3(0, 0, h), Vec3::UnitX(), Vec3::UnitY(), rho, samples);
  for (std::size_t k = 0; k < f.curve.s.size(); ++k) {
    const Vec3& p = f.curve.spatial[k];
    f.curve.uv_in_m.push_back(Vec2(f.curve.s[k] / rho, std::asin(h)));
    f.curve.uv_in_mbar.push_back(Vec2(p.x(), p.y()));
  }
  return f;
}

IntersectionFixture sphere_sphere(double d, int samples) {
  if (!(d > 0 && d < 2)) throw GeometryError(ErrorKind::DegenerateParameter, "sphere_sphere needs 0 < d < 2");
  const Vec3 c2(d, 0, 0);
  IntersectionFixture f{"sphere_sphere", make_sphere(1.0), make_sphere(1.0, c2), {}};
  const double rho = std::sqrt(1 - d * d / 4);
  if (!(std::asin(rho) < 1.4)) throw GeometryError(ErrorKind::DegenerateParameter, "circle leaves the sphere chart");
  sample_circle(f.curve, Vec3(d / 2, 0, 0), Vec3::UnitY(), Vec3::UnitZ(), rho, samples);
  for (const Vec3& p : f.curve.spatial) {
    f.curve.uv_in_m.push_back(sphere_preimage(p, Vec3::Zero(), 1.0, 0.0));
    f.curve.uv_in_mbar.push_back(sphere_preimage(p, c2, 1.0, kPi));
  }
  return f;
}

// Section of the unit cylinder by the plane z = tan(tilt) x: the ellipse
// (cos a, sin a, m cos a), reparametrized by arc length through Newton's
// method on the length integral.
IntersectionFixture cylinder_plane(double tilt, int samples) {
  if (!(std::abs(tilt) < 1.4)) throw GeometryError(ErrorKind::DegenerateParameter, "cylinder_plane needs |tilt| < 1.4");
  const double m = std::tan(tilt);
  const Vec3 u(std::cos(tilt), 0, std::sin(tilt)), w(0, 1, 0);
  IntersectionFixture f{"cylinder_plane", make_cylinder(1.0).surface, make_plane(Vec3::Zero(), u, w), {}};

  auto speed = [m](double a) { return std::sqrt(1 + m * m * std::sin(a) * std::sin(a)); };
  auto length_to = [&](double a) { return numerics::adaptive_simpson(speed, 0.0, a, 1e-14); };
  const double length = length_to(2 * kPi);
  SharedCurve& c = f.curve;
  c.step = length / samples;
  double a = 0;
  for (int k = 0; k < samples; ++k) {
    const double s = k * c.step;
    for (int it = 0; it < 50; ++it) {
      const double da = (length_to(a) - s) / speed(a);
      a -= da;
      if (std::abs(da) < 1e-15) break;
    }
    const Vec3 p(std::cos(a), std::sin(a), m * std::cos(a));
    const Vec3 pa(-std::sin(a), std::cos(a), -m * std::sin(a));
    const Vec3 paa(-std::cos(a), -std::sin(a), -m * std::cos(a));
    const double sp = pa.norm();
    const Vec3 t = pa / sp;
    c.s.push_back(s);
    c.spatial.push_back(p);
    c.velocity.push_back(t);
    c.acceleration.push_back((paa - paa.dot(t) * t) / (sp * sp));
    c.uv_in_m.push_back(Vec2(-a, p.z()));
    c.uv_in_mbar.push_back(Vec2(p.dot(u), p.dot(w)));
    a += c.step / speed(a);  // predictor for the next station
  }
  return f;
}

}  // namespace

IntersectionFixture make_fixture(const std::string& name, const std::map<std::string, double>& params, int samples) {
  if (samples < 64) throw GeometryError(ErrorKind::InvalidArgument, "fixtures need >= 64 samples");
  if (name == "sphere_plane") return sphere_plane(param(params, "h", 0.5), samples);
  if (name == "sphere_sphere") return sphere_sphere(param(params, "d", 1.0), samples);
  if (name == "cylinder_plane") return cylinder_plane(param(params, "tilt", 0.5), samples);
  throw GeometryError(ErrorKind::UnknownFixture, "unknown fixture '" + name + "'");
}

std::vector<CurveStation> chart_stations(const SurfaceDef& surface, const SharedCurve& curve,
                                         const std::vector<Vec2>& preimages) {
  std::vector<CurveStation> out(curve.s.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const SurfaceJet2 j = jet2(surface, preimages[k]);
    const double miss = (j.position - curve.spatial[k]).norm();
    if (miss > 1e-9) {
      std::ostringstream os;
      os << surface.id() << " preimage misses station " << k << " by " << miss;
      throw GeometryError(ErrorKind::PreimageMismatch, os.str());
    }
    Eigen::Matrix<double, 3, 2> jac;
    jac << j.d_t, j.d_z;
    const auto qr = jac.colPivHouseholderQr();
    const Vec2 vel = qr.solve(curve.velocity[k]);
    const double tp = vel.x(), zp = vel.y();
    const Vec3 rest = curve.acceleration[k] - (tp * tp * j.d_tt + 2 * tp * zp * j.d_tz + zp * zp * j.d_zz);
    out[k] = CurveStation{curve.s[k], preimages[k], vel, qr.solve(rest)};
  }
  return out;
}

IntersectionReport analyze_intersection(const SurfaceDef& m, const SurfaceDef& mbar, const SharedCurve& curve,
                                        const ClassifyOptions& options) {
  IntersectionReport r;
  const auto st_m = chart_stations(m, curve, curve.uv_in_m);
  const auto st_mbar = chart_stations(mbar, curve, curve.uv_in_mbar);
  r.data_m = curve_scalars(m, st_m);
  r.data_mbar = curve_scalars(mbar, st_mbar);

  const std::size_t n = curve.s.size();
  std::vector<double> dtaug(n);
  r.theta.resize(n);
  r.theta_bar.resize(n);
  r.xi.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const CurveSample& a = r.data_m.samples[k];
    const CurveSample& b = r.data_mbar.samples[k];
    r.theta[k] = a.theta;
    r.theta_bar[k] = b.theta;
    r.xi[k] = std::acos(std::clamp(a.normal.dot(b.normal), -1.0, 1.0));
    if (r.xi[k] < 1e-3 || r.xi[k] > kPi - 1e-3) {
      std::ostringstream os;
      os << "surfaces are tangent at station " << k << " (angle " << r.xi[k] << ")";
      throw GeometryError(ErrorKind::Tangency, os.str());
    }
    dtaug[k] = a.taug - b.taug;
  }

  // Pick eps and the 2 pi branch at s = 0.
  auto fit = [&](int eps) {
    const double raw = r.xi[0] - eps * (r.theta_bar[0] - r.theta[0]);
    const double branch = 2 * kPi * std::round(raw / (2 * kPi));
    return std::pair{std::abs(raw - branch), branch};
  };
  const auto [res_plus, br_plus] = fit(1);
  const auto [res_minus, br_minus] = fit(-1);
  r.eps = res_plus <= res_minus ? 1 : -1;
  r.branch = r.eps == 1 ? br_plus : br_minus;
  r.eps_ambiguous = res_plus < 1e-8 && res_minus < 1e-8;

  const std::vector<double> dxi = numerics::uniform_derivative(r.xi, curve.step, 1);
  for (std::size_t k = 0; k < n; ++k) {
    r.relation_residual =
        std::max(r.relation_residual, std::abs(r.xi[k] - r.eps * (r.theta_bar[k] - r.theta[k]) - r.branch));
    r.derivative_residual = std::max(r.derivative_residual, std::abs(dxi[k] - r.eps * dtaug[k]));
  }
  r.constant_angle = constancy_test(r.xi, options.abs_tol, options.rel_tol);
  r.pseudo_geodesic_m = constancy_test(r.theta, options.abs_tol, options.rel_tol);
  r.pseudo_geodesic_mbar = constancy_test(r.theta_bar, options.abs_tol, options.rel_tol);
  return r;
}

}  // namespace curvegeo
