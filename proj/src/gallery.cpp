#include "curvegeo/gallery.hpp"

#include <cmath>

#include "curvegeo/errors.hpp"
#include "curvegeo/numerics.hpp"

namespace curvegeo {

bool GalleryOracle::swapped(const Vec2& uv) const {
  const OracleValues v = values(uv);
  return v.k1 > v.k2;
}

OracleValues GalleryOracle::engine_values(const Vec2& uv) const {
  const OracleValues v = values(uv);
  if (v.k1 <= v.k2) return v;
  // Engine E1 = published E2 and engine E2 = N x E1 = -published E1.
  return {v.kg2, -v.kg1, v.k2, v.k1};
}

double GalleryOracle::engine_phi(double published_phi, const Vec2& uv) const {
  return swapped(uv) ? published_phi - kPi / 2 : published_phi;
}

GallerySurface make_helix_surface(double r_beta, double phi0) {
  if (!(r_beta > 0)) throw GeometryError(ErrorKind::DegenerateParameter, "helix surface needs r_beta > 0");
  if (!(phi0 > 0 && phi0 < kPi / 2)) {
    throw GeometryError(ErrorKind::DegenerateParameter, "helix surface needs 0 < phi0 < pi/2");
  }
  const double kb = 1.0 / r_beta;
  const double cp = std::cos(phi0), sp = std::sin(phi0);
  auto jet = [=](double t, double z) {
    const double a = t * kb;
    const Vec3 tb(-std::sin(a), std::cos(a), 0.0);
    const Vec3 nb(-std::cos(a), -std::sin(a), 0.0);
    const Vec3 v = Vec3::UnitZ();
    const double stretch = 1.0 - z * cp * kb;
    SurfaceJet2 j;
    j.position = r_beta * Vec3(std::cos(a), std::sin(a), 0.0) + z * (cp * nb + sp * v);
    j.d_t = stretch * tb;
    j.d_z = cp * nb + sp * v;
    j.d_tt = stretch * kb * nb;
    j.d_tz = -cp * kb * tb;
    j.d_zz = Vec3::Zero();
    return j;
  };
  const double z_sing = r_beta / cp;
  Domain dom{-kPi * r_beta, kPi * r_beta, -0.95 * z_sing, 0.95 * z_sing};
  GalleryOracle oracle;
  oracle.values = [=](const Vec2& uv) {
    const double d = 1.0 - uv.y() * cp * kb;
    return OracleValues{cp * kb / d, 0.0, -sp * kb / d, 0.0};
  };
  return {SurfaceDef("helix", dom, jet, true, {{"r_beta", r_beta}, {"phi0", phi0}}), oracle};
}

GallerySurface make_enneper(double half_width) {
  auto jet = [](double t, double z) {
    SurfaceJet2 j;
    j.position = {t - t * t * t / 3 + t * z * z, z - z * z * z / 3 + z * t * t, t * t - z * z};
    j.d_t = {1 - t * t + z * z, 2 * t * z, 2 * t};
    j.d_z = {2 * t * z, 1 - z * z + t * t, -2 * z};
    j.d_tt = {-2 * t, 2 * z, 2};
    j.d_tz = {2 * z, 2 * t, 0};
    j.d_zz = {2 * t, -2 * z, -2};
    return j;
  };
  Domain dom{-half_width, half_width, -half_width, half_width};
  GalleryOracle oracle;
  oracle.values = [](const Vec2& uv) {
    const double w = 1 + uv.squaredNorm();
    const double w2 = w * w;
    return OracleValues{-2 * uv.y() / w2, 2 * uv.x() / w2, 2 / w2, -2 / w2};
  };
  return {SurfaceDef("enneper", dom, jet, true), oracle};
}

double crpc_profile_height(double t, double c, int eps) {
  if (t == 1.0) return 0.0;
  if (!(t > 0 && t <= 1)) throw GeometryError(ErrorKind::OutOfDomain, "crpc profile needs 0 < t <= 1");
  // u = 1 - w^2 removes the inverse-square-root singularity at u = 1.
  auto integrand = [c](double w) {
    if (w == 0.0) return 2.0 / std::sqrt(2.0 * c);
    const double w2 = w * w;
    const double u = 1.0 - w2;
    const double q = -std::expm1(2.0 * c * std::log1p(-w2)) / w2;
    return 2.0 * std::pow(u, c) / std::sqrt(q);
  };
  const double integral = numerics::adaptive_simpson(integrand, 0.0, std::sqrt(1.0 - t), 1e-12);
  return -eps * integral;
}

GallerySurface make_crpc_revolution(double c, int eps) {
  if (!(c > 0)) throw GeometryError(ErrorKind::DegenerateParameter, "crpc revolution needs c > 0");
  if (eps != 1 && eps != -1) throw GeometryError(ErrorKind::DegenerateParameter, "eps must be +1 or -1");
  auto jet = [=](double t, double z) {
    const double tc = std::pow(t, c);
    const double root = std::sqrt(1.0 - tc * tc);
    const double h1 = eps * tc / root;
    const double h2 = eps * c * std::pow(t, c - 1) / (root * root * root);
    const double cz = std::cos(z), sz = std::sin(z);
    SurfaceJet2 j;
    j.position = {t * cz, t * sz, crpc_profile_height(t, c, eps)};
    j.d_t = {cz, sz, h1};
    j.d_z = {-t * sz, t * cz, 0};
    j.d_tt = {0, 0, h2};
    j.d_tz = {-sz, cz, 0};
    j.d_zz = {-t * cz, -t * sz, 0};
    return j;
  };
  Domain dom{0.05, 0.95, -kPi, kPi};
  GalleryOracle oracle;
  oracle.values = [=](const Vec2& uv) {
    const double t = uv.x();
    const double kp = eps * std::pow(t, c - 1);
    const double root = std::sqrt(1.0 - std::pow(t, 2 * c));
    return OracleValues{0.0, root / t, c * kp, kp};
  };
  oracle.frame = [=](const Vec2& uv) {
    const double t = uv.x(), z = uv.y();
    const double tc = std::pow(t, c);
    const double root = std::sqrt(1.0 - tc * tc);
    OracleFrame f;
    f.e1 = {root * std::cos(z), root * std::sin(z), eps * tc};
    f.e2 = {-std::sin(z), std::cos(z), 0};
    f.normal = {-eps * tc * std::cos(z), -eps * tc * std::sin(z), root};
    return f;
  };
  return {SurfaceDef("crpc", dom, jet, true, {{"c", c}, {"eps", double(eps)}}), oracle};
}

GallerySurface make_bonnet(double a) {
  if (!(a > 0 && a < 1)) throw GeometryError(ErrorKind::DegenerateParameter, "bonnet needs 0 < a < 1");
  const double s = std::sqrt(1 - a * a);
  auto jet = [=](double t, double z) {
    const double ct = std::cos(t), st = std::sin(t), ch = std::cosh(z), sh = std::sinh(z);
    SurfaceJet2 j;
    j.position = {(a * t + st * ch) / s, (z + a * ct * sh) / s, ct * ch};
    j.d_t = {(a + ct * ch) / s, -a * st * sh / s, -st * ch};
    j.d_z = {st * sh / s, (1 + a * ct * ch) / s, ct * sh};
    j.d_tt = {-st * ch / s, -a * ct * sh / s, -ct * ch};
    j.d_tz = {ct * sh / s, -a * st * ch / s, -st * sh};
    j.d_zz = {st * ch / s, a * ct * sh / s, ct * ch};
    return j;
  };
  Domain dom{-kPi, kPi, -1.5, 1.5};
  GalleryOracle oracle;
  oracle.values = [=](const Vec2& uv) {
    const double d = a * std::cos(uv.x()) + std::cosh(uv.y());
    const double d2 = d * d;
    const double k2 = (1 - a * a) / d2;
    return OracleValues{-s * std::sinh(uv.y()) / d2, -a * s * std::sin(uv.x()) / d2, -k2, k2};
  };
  return {SurfaceDef("bonnet", dom, jet, true, {{"a", a}}), oracle};
}

GallerySurface make_cylinder(double r) {
  if (!(r > 0)) throw GeometryError(ErrorKind::DegenerateParameter, "cylinder needs r > 0");
  // Clockwise angle so that X_t x X_z points to the axis.
  auto jet = [=](double t, double z) {
    const double ct = std::cos(t), st = std::sin(t);
    SurfaceJet2 j;
    j.position = {r * ct, -r * st, z};
    j.d_t = {-r * st, -r * ct, 0};
    j.d_z = {0, 0, 1};
    j.d_tt = {-r * ct, r * st, 0};
    return j;
  };
  Domain dom{-2 * kPi, 2 * kPi, -5, 5};
  GalleryOracle oracle;
  oracle.values = [=](const Vec2&) { return OracleValues{0.0, 0.0, 1.0 / r, 0.0}; };
  return {SurfaceDef("cylinder", dom, jet, true, {{"r", r}}), oracle};
}

GallerySurface make_catenoid() {
  auto jet = [](double t, double z) {
    const double ct = std::cos(t), st = std::sin(t), ch = std::cosh(z), sh = std::sinh(z);
    SurfaceJet2 j;
    j.position = {ch * ct, ch * st, z};
    j.d_t = {-ch * st, ch * ct, 0};
    j.d_z = {sh * ct, sh * st, 1};
    j.d_tt = {-ch * ct, -ch * st, 0};
    j.d_tz = {-sh * st, sh * ct, 0};
    j.d_zz = {ch * ct, ch * st, 0};
    return j;
  };
  Domain dom{-2 * kPi, 2 * kPi, -2, 2};
  GalleryOracle oracle;
  oracle.values = [](const Vec2& uv) {
    const double ch = std::cosh(uv.y());
    const double ch2 = ch * ch;
    return OracleValues{-std::sinh(uv.y()) / ch2, 0.0, -1.0 / ch2, 1.0 / ch2};
  };
  return {SurfaceDef("catenoid", dom, jet, true), oracle};
}

SurfaceDef make_sphere(double r, const Vec3& center) {
  if (!(r > 0)) throw GeometryError(ErrorKind::DegenerateParameter, "sphere needs r > 0");
  auto jet = [=](double t, double z) {
    const double ct = std::cos(t), st = std::sin(t), cz = std::cos(z), sz = std::sin(z);
    SurfaceJet2 j;
    j.position = center + r * Vec3(ct * cz, st * cz, sz);
    j.d_t = r * Vec3(-st * cz, ct * cz, 0);
    j.d_z = r * Vec3(-ct * sz, -st * sz, cz);
    j.d_tt = r * Vec3(-ct * cz, -st * cz, 0);
    j.d_tz = r * Vec3(st * sz, -ct * sz, 0);
    j.d_zz = r * Vec3(-ct * cz, -st * cz, -sz);
    return j;
  };
  Domain dom{-2 * kPi, 2 * kPi, -1.4, 1.4};
  return SurfaceDef("sphere", dom, jet, true,
                    {{"r", r}, {"cx", center.x()}, {"cy", center.y()}, {"cz", center.z()}});
}

SurfaceDef make_plane(const Vec3& origin, const Vec3& u, const Vec3& w) {
  auto jet = [=](double t, double z) {
    SurfaceJet2 j;
    j.position = origin + t * u + z * w;
    j.d_t = u;
    j.d_z = w;
    return j;
  };
  Domain dom{-10, 10, -10, 10};
  return SurfaceDef("plane", dom, jet, std::abs(u.dot(w)) < 1e-14);
}

GallerySurface make_gallery_surface(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "helix") return make_helix_surface(get("r_beta", 1.0), get("phi0", kPi / 4));
  if (name == "enneper") return make_enneper(get("half_width", 2.0));
  if (name == "crpc") return make_crpc_revolution(get("c", 2.0), get("eps", 1.0) < 0 ? -1 : 1);
  if (name == "bonnet") return make_bonnet(get("a", 0.5));
  if (name == "cylinder") return make_cylinder(get("r", 1.0));
  if (name == "catenoid") return make_catenoid();
  if (name == "sphere") {
    return {make_sphere(get("r", 1.0), Vec3(get("cx", 0), get("cy", 0), get("cz", 0))), std::nullopt};
  }
  if (name == "plane") return {make_plane(Vec3(0, 0, get("height", 0.0))), std::nullopt};
  throw GeometryError(ErrorKind::UnknownSurface, "no gallery surface named '" + name + "'");
}

}  // namespace curvegeo
