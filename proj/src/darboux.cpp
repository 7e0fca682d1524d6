#include "curvegeo/darboux.hpp"

#include <cmath>
#include <sstream>

#include "curvegeo/errors.hpp"
#include "curvegeo/numerics.hpp"

namespace curvegeo {

DirectionScalars pointwise_direction_scalars(const ShapeData& sd, const Vec3& dir) {
  if (sd.umbilic) throw GeometryError(ErrorKind::UmbilicPoint, "principal directions undefined");
  if (std::abs(dir.dot(sd.normal)) >= 1e-8) {
    throw GeometryError(ErrorKind::NonTangentDirection, "direction has a normal component");
  }
  DirectionScalars out;
  out.phi = std::atan2(dir.dot(sd.e2), dir.dot(sd.e1));
  const double c = std::cos(out.phi), s = std::sin(out.phi);
  out.kn = sd.kappa1 * c * c + sd.kappa2 * s * s;
  out.taug = (sd.kappa1 - sd.kappa2) * c * s;
  return out;
}

CurveData curve_scalars(const SurfaceDef& surface, std::span<const CurveStation> stations) {
  if (stations.size() < 5) throw GeometryError(ErrorKind::TooFewSamples, "curve_scalars needs >= 5 stations");
  CurveData data;
  data.step = stations[1].s - stations[0].s;
  data.samples.reserve(stations.size());

  std::optional<Vec3> previous_e1;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const CurveStation& st = stations[i];
    const SurfaceJet2 j = jet2(surface, st.uv);
    const FundamentalForms ff = fundamental_forms(j);
    ShapeData sd = shape_data(j, ff);

    const double tp = st.uv_vel.x(), zp = st.uv_vel.y();
    const Vec3 vel = tp * j.d_t + zp * j.d_z;
    const double speed = vel.norm();
    if (std::abs(speed - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "station " << i << " has speed " << speed;
      throw GeometryError(ErrorKind::NonUnitSpeed, os.str());
    }
    const Vec3 acc = st.uv_acc.x() * j.d_t + st.uv_acc.y() * j.d_z + tp * tp * j.d_tt +
                     2 * tp * zp * j.d_tz + zp * zp * j.d_zz;

    CurveSample cs;
    cs.s = st.s;
    cs.uv = st.uv;
    cs.uv_vel = st.uv_vel;
    cs.uv_acc = st.uv_acc;
    cs.pos = j.position;
    cs.tangent = vel / speed;
    cs.normal = sd.normal;
    cs.kappa1 = sd.kappa1;
    cs.kappa2 = sd.kappa2;

    const Vec3 curvature_vector = (acc - acc.dot(cs.tangent) * cs.tangent) / (speed * speed);
    cs.kg = curvature_vector.dot(sd.normal.cross(cs.tangent));

    if (sd.umbilic) {
      data.umbilic_stations.push_back(i);
      cs.e1 = sd.e1;
      cs.kn = 0.5 * (sd.kappa1 + sd.kappa2);
      cs.taug = 0.0;
      previous_e1.reset();
    } else {
      const Vec3 default_e1 = sd.e1;
      if (previous_e1) align_principal_frame(sd, *previous_e1);
      cs.e1_flipped = sd.e1.dot(default_e1) < 0;
      previous_e1 = sd.e1;
      cs.e1 = sd.e1;
      const DirectionScalars ds = pointwise_direction_scalars(sd, cs.tangent);
      cs.phi = ds.phi;
      cs.kn = ds.kn;
      cs.taug = ds.taug;
    }
    data.samples.push_back(cs);
  }
  complete_torsion(data);
  return data;
}

void complete_torsion(CurveData& data) {
  auto& samples = data.samples;
  std::vector<double> raw(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].kappa = std::hypot(samples[i].kg, samples[i].kn);
    raw[i] = std::atan2(samples[i].kg, samples[i].kn);
  }
  const std::vector<double> theta = numerics::unwrap(raw);
  const std::vector<double> dtheta = numerics::uniform_derivative(theta, data.step, 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i].theta = theta[i];
    samples[i].tau = samples[i].taug + dtheta[i];
  }
}

std::vector<FrenetSample> frenet_apparatus(std::span<const Vec3> positions, double step) {
  if (positions.size() < 7) throw GeometryError(ErrorKind::TooFewSamples, "frenet_apparatus needs >= 7 samples");
  const auto d1 = numerics::uniform_derivative(positions, step, 1);
  const auto d2 = numerics::uniform_derivative(positions, step, 2);
  const auto d3 = numerics::uniform_derivative(positions, step, 3);
  std::vector<FrenetSample> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec3 cross = d1[i].cross(d2[i]);
    const double speed = d1[i].norm();
    FrenetSample& f = out[i];
    f.kappa = cross.norm() / (speed * speed * speed);
    if (!(f.kappa > 1e-6)) {
      std::ostringstream os;
      os << "curvature " << f.kappa << " at sample " << i;
      throw GeometryError(ErrorKind::VanishingCurvature, os.str());
    }
    f.tangent = d1[i] / speed;
    f.principal_normal = (d2[i] - d2[i].dot(f.tangent) * f.tangent).normalized();
    f.binormal = f.tangent.cross(f.principal_normal);
    // <B', N> with B' = +tau N equals -det(g', g'', g''')/|g' x g''|^2.
    f.tau = -cross.dot(d3[i]) / cross.squaredNorm();
  }
  return out;
}

FrenetSample darboux_frenet(const CurveSample& s) {
  const Vec3 jt = s.normal.cross(s.tangent);
  FrenetSample f;
  f.tangent = s.tangent;
  f.principal_normal = std::sin(s.theta) * jt + std::cos(s.theta) * s.normal;
  f.binormal = -std::cos(s.theta) * jt + std::sin(s.theta) * s.normal;
  f.kappa = s.kappa;
  f.tau = s.tau;
  return f;
}

double liouville_residual(const CurveSample& sample, double phi_prime, const OracleValues& o) {
  const double phi = sample.phi.value_or(0.0);
  return sample.kg - (phi_prime + std::cos(phi) * o.kg1 + std::sin(phi) * o.kg2);
}

std::vector<double> liouville_residuals(const CurveData& data, const GalleryOracle& oracle) {
  if (!data.umbilic_stations.empty()) return {};
  std::vector<double> phi(data.samples.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = *data.samples[i].phi;
  const std::vector<double> lifted = numerics::unwrap(phi);
  const std::vector<double> dphi = numerics::uniform_derivative(lifted, data.step, 1);
  std::vector<double> out(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const CurveSample& s = data.samples[i];
    OracleValues o = oracle.engine_values(s.uv);
    if (s.e1_flipped) {
      o.kg1 = -o.kg1;
      o.kg2 = -o.kg2;
    }
    out[i] = liouville_residual(s, dphi[i], o);
  }
  return out;
}

}  // namespace curvegeo
