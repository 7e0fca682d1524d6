#include "curvegeo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "curvegeo/errors.hpp"
#include "curvegeo/numerics.hpp"

namespace curvegeo {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Statistic within a factor of the threshold on either side.
bool near_threshold(double value, double threshold, double factor) {
  return value > threshold / factor && value < threshold * factor;
}

}  // namespace

ConstancyVerdict constancy_test(std::span<const double> values, double abs_tol, double rel_tol) {
  if (values.size() < 5) throw GeometryError(ErrorKind::TooFewSamples, "constancy test needs >= 5 values");
  ConstancyVerdict v;
  double sum = 0;
  for (double x : values) sum += x;
  v.mean = sum / static_cast<double>(values.size());
  for (double x : values) v.max_dev = std::max(v.max_dev, std::abs(x - v.mean));
  v.tolerance_used = abs_tol + rel_tol * std::abs(v.mean);
  v.is_constant = v.max_dev <= v.tolerance_used;
  return v;
}

DependenceVerdict linear_dependence_test(std::span<const double> x, std::span<const double> y, double threshold,
                                         std::size_t min_samples) {
  if (x.size() != y.size()) throw GeometryError(ErrorKind::InvalidArgument, "series lengths differ");
  if (x.size() < min_samples) {
    std::ostringstream os;
    os << "dependence test needs >= " << min_samples << " pairs, got " << x.size();
    throw GeometryError(ErrorKind::TooFewSamples, os.str());
  }
  DependenceVerdict v;
  if (max_abs(x) < 1e-13 && max_abs(y) < 1e-13) {
    v.dependent = true;
    v.degenerate = true;
    v.coeffs = Vec2(1, 0);
    v.residual = 0;
    return v;
  }
  Eigen::MatrixX2d a(static_cast<Eigen::Index>(x.size()), 2);
  for (std::size_t i = 0; i < x.size(); ++i) a.row(static_cast<Eigen::Index>(i)) << x[i], y[i];
  const Eigen::JacobiSVD<Eigen::MatrixX2d> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  v.residual = sv[0] > 0 ? sv[1] / sv[0] : 0.0;
  Vec2 c = svd.matrixV().col(1);
  if (c.x() < 0 || (std::abs(c.x()) <= 1e-15 && c.y() < 0)) c = -c;
  v.coeffs = c.normalized();
  v.dependent = v.residual <= threshold;
  return v;
}

HelixReport helix_axis(std::span<const CurveSample> samples, const DependenceVerdict& dependence,
                       const ClassifyOptions& options) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].kappa > 1e-6)) {
      std::ostringstream os;
      os << "curvature " << samples[i].kappa << " at sample " << i << " leaves the helix axis undefined";
      throw GeometryError(ErrorKind::VanishingCurvature, os.str());
    }
  }
  HelixReport h;
  h.dependence = dependence;
  h.mn = dependence.coeffs;
  h.psi = std::atan2(h.mn.y(), h.mn.x());
  Vec3 sum = Vec3::Zero();
  std::vector<FrenetSample> frames;
  frames.reserve(samples.size());
  for (const CurveSample& s : samples) {
    frames.push_back(darboux_frenet(s));
    sum += h.mn.x() * frames.back().tangent + h.mn.y() * frames.back().binormal;
  }
  h.axis = sum.normalized();
  std::vector<double> dot_t(samples.size()), dot_n(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    dot_t[i] = h.axis.dot(samples[i].tangent);
    dot_n[i] = h.axis.dot(samples[i].normal);
  }
  h.axis_dot_t = constancy_test(dot_t, options.helix_axis_tol, 0.0);
  h.axis_dot_n = constancy_test(dot_n, options.abs_tol, options.rel_tol);
  h.fitted = true;
  h.is_helix = dependence.dependent && h.axis_dot_t.is_constant;
  return h;
}

ClassificationReport classify_samples(const CurveData& data, const ClassifyOptions& options) {
  const auto& samples = data.samples;
  const std::size_t n = samples.size();
  if (n < 9) throw GeometryError(ErrorKind::TooFewSamples, "classification needs >= 9 samples");

  std::vector<double> phi, theta(n), kappa(n), tau(n), kn(n), taug(n), k1(n), k2(n), skew(n);
  ClassificationReport r;
  double max_kappa = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const CurveSample& s = samples[i];
    theta[i] = s.theta;
    kappa[i] = s.kappa;
    tau[i] = s.tau;
    kn[i] = s.kn;
    taug[i] = s.taug;
    k1[i] = s.kappa1;
    k2[i] = s.kappa2;
    skew[i] = s.kappa1 - s.kappa2;
    max_kappa = std::max(max_kappa, s.kappa);
    r.max_abs_kg = std::max(r.max_abs_kg, std::abs(s.kg));
    r.max_abs_theta = std::max(r.max_abs_theta, std::abs(s.theta));
  }
  r.max_abs_kn = max_abs(kn);
  r.max_abs_taug = max_abs(taug);
  r.max_abs_tau = max_abs(tau);
  r.kappa_scale = 1 + max_kappa;
  const double flag = options.flag_tol * r.kappa_scale;
  const double g = options.gray_factor;

  if (data.umbilic_stations.empty()) {
    phi.reserve(n);
    for (const CurveSample& s : samples) phi.push_back(*s.phi);
    r.isogonal = constancy_test(numerics::unwrap(phi), options.abs_tol, options.rel_tol);
  }
  r.pseudo_geodesic = constancy_test(theta, options.abs_tol, options.rel_tol);
  r.geodesic = r.max_abs_kg <= flag;
  r.line_of_curvature = r.max_abs_taug <= flag;
  r.asymptotic = r.max_abs_kn <= flag;
  r.planar = r.max_abs_tau <= flag;

  r.crpc_along = linear_dependence_test(k1, k2, options.dependence_threshold);
  r.kntg_dep = linear_dependence_test(kn, taug, options.dependence_threshold);
  r.cskc_along = constancy_test(skew, options.abs_tol, options.rel_tol);
  r.taug_along = constancy_test(taug, options.abs_tol, options.rel_tol);

  const DependenceVerdict kt = linear_dependence_test(kappa, tau, options.dependence_threshold);
  try {
    r.helix = helix_axis(samples, kt, options);
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::VanishingCurvature) throw;
    r.helix = HelixReport{};
    r.helix.dependence = kt;
    r.helix.mn = kt.coeffs;
    r.gray.helix = true;
  }

  r.gray.line_of_curvature = near_threshold(r.max_abs_taug, flag, g);
  r.gray.asymptotic = near_threshold(r.max_abs_kn, flag, g);
  r.gray.planar = near_threshold(r.max_abs_tau, flag, g);
  r.gray.geodesic = near_threshold(r.max_abs_kg, flag, g);
  r.gray.pseudo_geodesic = near_threshold(r.pseudo_geodesic.max_dev, r.pseudo_geodesic.tolerance_used, g);
  const double dep = options.dependence_threshold;
  r.gray.kntg = !r.kntg_dep.degenerate && near_threshold(r.kntg_dep.residual, dep, g);
  r.gray.crpc = !r.crpc_along.degenerate && near_threshold(r.crpc_along.residual, dep, g);
  if (r.helix.fitted) {
    r.gray.helix = (!kt.degenerate && near_threshold(kt.residual, dep, g)) ||
                   near_threshold(r.helix.axis_dot_t.max_dev, r.helix.axis_dot_t.tolerance_used, g);
    r.gray.axis_dot_n = near_threshold(r.helix.axis_dot_n.max_dev, r.helix.axis_dot_n.tolerance_used, g);
  }
  return r;
}

ClassificationReport classify_curve(const SurfaceDef& surface, const Trace& trace, const ClassifyOptions& options) {
  const CurveData data = curve_scalars(surface, trace.stations);
  return classify_samples(data, options);
}

SurfaceProbe surface_class_probe(const SurfaceDef& surface, int nt, int nz, const ClassifyOptions& options) {
  if (nt * nz < 25) throw GeometryError(ErrorKind::TooFewSamples, "surface probe needs >= 25 grid points");
  const Domain& d = surface.domain();
  std::vector<double> k1, k2, skew;
  SurfaceProbe p;
  for (int i = 0; i < nt; ++i) {
    for (int k = 0; k < nz; ++k) {
      const Vec2 uv(d.t_min + (i + 0.5) / nt * (d.t_max - d.t_min), d.z_min + (k + 0.5) / nz * (d.z_max - d.z_min));
      const ShapeData sd = shape_data_at(surface, uv);
      k1.push_back(sd.kappa1);
      k2.push_back(sd.kappa2);
      skew.push_back(sd.kappa1 - sd.kappa2);
      ++p.points;
      if (sd.umbilic) ++p.umbilic_points;
    }
  }
  p.crpc = linear_dependence_test(k1, k2, options.dependence_threshold);
  if (p.umbilic_points == p.points) p.crpc.degenerate = true;
  p.cskc = constancy_test(skew, options.abs_tol, options.rel_tol);
  return p;
}

}  // namespace curvegeo
