#include "curvegeo/surface.hpp"

#include <cmath>
#include <sstream>

#include "curvegeo/errors.hpp"

namespace curvegeo {

SurfaceDef::SurfaceDef(std::string id, Domain domain, JetFunction jet, bool orthogonal,
                       std::map<std::string, double> parameters)
    : id_(std::move(id)),
      domain_(domain),
      source_(JetSource::Analytic),
      orthogonal_(orthogonal),
      parameters_(std::move(parameters)),
      jet_(std::move(jet)) {}

SurfaceDef SurfaceDef::from_position(std::string id, Domain domain, PositionFunction position,
                                     bool orthogonal, std::map<std::string, double> parameters) {
  auto jet = [position](double t, double z) { return finite_difference_jet(position, t, z); };
  SurfaceDef s(std::move(id), domain, jet, orthogonal, std::move(parameters));
  s.source_ = JetSource::FiniteDifference;
  s.position_ = std::move(position);
  return s;
}

double SurfaceDef::parameter(const std::string& name) const {
  auto it = parameters_.find(name);
  if (it == parameters_.end()) {
    throw GeometryError(ErrorKind::InvalidArgument, "surface '" + id_ + "' has no parameter '" + name + "'");
  }
  return it->second;
}

SurfaceDef SurfaceDef::with_domain(Domain domain) const {
  SurfaceDef copy = *this;
  copy.domain_ = domain;
  return copy;
}

SurfaceJet2 SurfaceDef::evaluate(double t, double z) const { return jet_(t, z); }

Vec3 SurfaceDef::position(double t, double z) const {
  if (position_) return position_(t, z);
  return jet_(t, z).position;
}

SurfaceJet2 jet2(const SurfaceDef& surface, const Vec2& p) {
  if (!surface.domain().contains(p)) {
    std::ostringstream os;
    os << "(" << p.x() << ", " << p.y() << ") outside the domain of " << surface.id();
    throw GeometryError(ErrorKind::OutOfDomain, os.str());
  }
  SurfaceJet2 j = surface.evaluate(p.x(), p.y());
  const double cross = j.d_t.cross(j.d_z).norm();
  if (!(cross >= 1e-14 * j.d_t.norm() * j.d_z.norm()) || cross == 0.0) {
    std::ostringstream os;
    os << "degenerate tangents at (" << p.x() << ", " << p.y() << ") on " << surface.id();
    throw GeometryError(ErrorKind::SingularJet, os.str());
  }
  return j;
}

SurfaceJet2 finite_difference_jet(const PositionFunction& X, double t, double z) {
  const double h = 1e-5 * std::max({1.0, std::abs(t), std::abs(z)});
  const Vec3 c = X(t, z);
  const Vec3 tp = X(t + h, z), tm = X(t - h, z);
  const Vec3 zp = X(t, z + h), zm = X(t, z - h);
  SurfaceJet2 j;
  j.position = c;
  j.d_t = (tp - tm) / (2 * h);
  j.d_z = (zp - zm) / (2 * h);
  j.d_tt = (tp - 2 * c + tm) / (h * h);
  j.d_zz = (zp - 2 * c + zm) / (h * h);
  j.d_tz = (X(t + h, z + h) - X(t + h, z - h) - X(t - h, z + h) + X(t - h, z - h)) / (4 * h * h);
  return j;
}

Vec3 unit_normal(const SurfaceJet2& j) { return j.d_t.cross(j.d_z).normalized(); }

FundamentalForms fundamental_forms(const SurfaceJet2& j) {
  const Vec3 n = unit_normal(j);
  FundamentalForms ff;
  ff.E = j.d_t.dot(j.d_t);
  ff.F = j.d_t.dot(j.d_z);
  ff.G = j.d_z.dot(j.d_z);
  ff.e = j.d_tt.dot(n);
  ff.f = j.d_tz.dot(n);
  ff.g = j.d_zz.dot(n);
  return ff;
}

namespace {

// Tangential components of v in the basis (X_t, X_z) via the inverse metric.
Vec2 tangent_coordinates(const SurfaceJet2& j, const FundamentalForms& ff, const Vec3& v) {
  const double det = ff.E * ff.G - ff.F * ff.F;
  const double a = v.dot(j.d_t), b = v.dot(j.d_z);
  return {(ff.G * a - ff.F * b) / det, (ff.E * b - ff.F * a) / det};
}

void sign_default(ShapeData& sd, const SurfaceJet2& j) {
  const double along_t = sd.e1.dot(j.d_t);
  double s = along_t;
  if (std::abs(along_t) <= 1e-8 * j.d_t.norm()) s = sd.e1.dot(j.d_z);
  if (s < 0) {
    sd.e1 = -sd.e1;
    sd.e2 = -sd.e2;
  }
}

void fill_decomposition(ShapeData& sd, const SurfaceJet2& j) {
  sd.f1 = j.d_t.dot(sd.e1);
  sd.f2 = j.d_t.dot(sd.e2);
  sd.g1 = j.d_z.dot(sd.e1);
  sd.g2 = j.d_z.dot(sd.e2);
}

}  // namespace

ShapeData shape_data(const SurfaceJet2& j, const FundamentalForms& ff) {
  ShapeData sd;
  sd.normal = unit_normal(j);

  // Second fundamental form in the orthonormal tangent basis
  // u1 = X_t/|X_t|, u2 = N x u1, written in chart coordinates.
  const double w = std::sqrt(ff.E * ff.G - ff.F * ff.F);
  const double sqrtE = std::sqrt(ff.E);
  const Vec2 c1(1.0 / sqrtE, 0.0);
  const Vec2 c2(-ff.F / (sqrtE * w), sqrtE / w);
  auto second_form = [&](const Vec2& a, const Vec2& b) {
    return ff.e * a.x() * b.x() + ff.f * (a.x() * b.y() + a.y() * b.x()) + ff.g * a.y() * b.y();
  };
  const double s11 = second_form(c1, c1);
  const double s12 = second_form(c1, c2);
  const double s22 = second_form(c2, c2);

  const double half_trace = 0.5 * (s11 + s22);
  const double radius = std::hypot(0.5 * (s11 - s22), s12);
  sd.kappa1 = half_trace - radius;
  sd.kappa2 = half_trace + radius;
  sd.mean = half_trace;
  sd.gaussian = s11 * s22 - s12 * s12;
  sd.umbilic = (sd.kappa2 - sd.kappa1) < umbilic_threshold(sd.kappa1, sd.kappa2);

  const Vec3 u1 = j.d_t / sqrtE;
  const Vec3 u2 = sd.normal.cross(u1);
  // Eigenvector of kappa2 sits at angle alpha from u1; kappa1 at alpha + pi/2.
  const double alpha = 0.5 * std::atan2(2.0 * s12, s11 - s22);
  sd.e1 = (-std::sin(alpha) * u1 + std::cos(alpha) * u2).normalized();
  sd.e2 = sd.normal.cross(sd.e1);
  sign_default(sd, j);
  fill_decomposition(sd, j);

  auto symbols = [&](const Vec3& xij) { return tangent_coordinates(j, ff, xij); };
  const Vec2 c11 = symbols(j.d_tt), c12 = symbols(j.d_tz), c22 = symbols(j.d_zz);
  sd.christoffel = {c11.x(), c12.x(), c22.x(), c11.y(), c12.y(), c22.y()};
  return sd;
}

ShapeData shape_data_at(const SurfaceDef& surface, const Vec2& p) {
  const SurfaceJet2 j = jet2(surface, p);
  return shape_data(j, fundamental_forms(j));
}

void align_principal_frame(ShapeData& sd, const Vec3& reference) {
  if (sd.e1.dot(reference) < 0) {
    sd.e1 = -sd.e1;
    sd.e2 = -sd.e2;
    sd.f1 = -sd.f1;
    sd.f2 = -sd.f2;
    sd.g1 = -sd.g1;
    sd.g2 = -sd.g2;
  }
}

}  // namespace curvegeo
