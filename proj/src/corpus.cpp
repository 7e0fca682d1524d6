#include <algorithm>
#include <cmath>
#include <random>

#include "curvegeo/errors.hpp"
#include "curvegeo/grid.hpp"
#include "curvegeo/scenarios.hpp"
#include "scenario_util.hpp"

namespace curvegeo {

using namespace detail;

namespace {

struct CorpusSpec {
  std::string label;
  const GallerySurface* gallery;
  TraceRequest request;
};

// Plane circle of radius r as exact chart stations.
CurveData plane_circle(double r, int samples) {
  const SurfaceDef plane = make_plane();
  std::vector<CurveStation> st;
  const double step = 2 * kPi * r / samples;
  for (int k = 0; k < samples; ++k) {
    const double s = k * step, a = s / r;
    st.push_back(CurveStation{s, Vec2(r * std::cos(a), r * std::sin(a)), Vec2(-std::sin(a), std::cos(a)),
                              Vec2(-std::cos(a) / r, -std::sin(a) / r)});
  }
  return curve_scalars(plane, st);
}

}  // namespace

std::vector<CorpusCurve> build_curve_corpus(const ScenarioContext& ctx) {
  static const GallerySurface helix = make_helix_surface();
  static const GallerySurface enneper = make_enneper();
  static const GallerySurface crpc = make_crpc_revolution(2.0, 1);
  static const GallerySurface bonnet = make_bonnet(0.5);
  static const GallerySurface cylinder = make_cylinder(1.0);
  static const GallerySurface catenoid = make_catenoid();
  static const GallerySurface sphere{make_sphere(1.0), std::nullopt};

  const double s_max = param(ctx, "corpus.s_max", 1.0);
  const double step = param(ctx, "corpus.step", 0.01);
  const std::vector<double> phis = param_list(ctx, "corpus.phis", {0.4, 1.0, -0.7});
  std::vector<CorpusSpec> specs;
  auto add = [&](const std::string& name, const GallerySurface& g, const Vec2& start, const TraceMode& mode,
                 const std::string& what) {
    specs.push_back({name + fmt(" (%.2f,%.2f) ", start.x(), start.y()) + what, &g,
                     TraceRequest{g.surface, start, mode, -s_max, s_max, step, ctx.tolerances}});
  };
  const std::pair<std::string, std::pair<const GallerySurface*, Vec2>> starts[] = {
      {"helix", {&helix, Vec2(0, 0)}},     {"enneper", {&enneper, Vec2(0, 1)}},
      {"crpc", {&crpc, Vec2(0.5, 0)}},     {"bonnet", {&bonnet, Vec2(0, 0.3)}},
      {"cylinder", {&cylinder, Vec2(0, 0)}}, {"catenoid", {&catenoid, Vec2(0, 0.5)}},
  };
  for (const auto& [name, gs] : starts) {
    const auto& [g, p] = gs;
    for (double phi : phis) add(name, *g, p, IsogonalMode{phi, 1.0}, fmt("isogonal phi=%.2f", phi));
    add(name, *g, p, GeodesicMode{InitialDirection::from_angle(0.3)}, "geodesic angle=0.30");
    add(name, *g, p, PseudoGeodesicMode{0.4, InitialDirection::from_angle(0.2)}, "pseudo-geodesic theta=0.40");
  }
  add("enneper", enneper, Vec2(0.5, -0.3), IsogonalMode{0.4, 1.0}, "isogonal phi=0.40");
  add("enneper", enneper, Vec2(0.5, -0.3), PseudoGeodesicMode{-0.5, InitialDirection::from_angle(0.2)},
      "pseudo-geodesic theta=-0.50");
  add("sphere", sphere, Vec2(0, 0.2), PseudoGeodesicMode{kPi / 4, InitialDirection::from_uv(Vec2(1, 0.5))},
      "pseudo-geodesic theta=pi/4");
  add("sphere", sphere, Vec2(0, 0.2), GeodesicMode{InitialDirection::from_uv(Vec2(1, 0.5))}, "geodesic");

  std::vector<TraceRequest> requests;
  for (const auto& s : specs) requests.push_back(s.request);
  const std::vector<BatchEntry> traced = trace_batch_parallel(requests);

  std::vector<CorpusCurve> out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (!traced[i].trace) {
      throw GeometryError(ErrorKind::InvalidArgument, "corpus curve " + specs[i].label + ": " + traced[i].error);
    }
    const Trace& tr = *traced[i].trace;
    CorpusCurve c;
    c.label = specs[i].label;
    c.oracle = specs[i].gallery->oracle;
    c.data = curve_scalars(specs[i].request.surface, tr.stations);
    c.report = classify_samples(c.data, ctx.classify);
    if (!std::holds_alternative<IsogonalMode>(specs[i].request.mode)) c.speed_drift = speed_drift(specs[i].request.surface, tr);
    out.push_back(std::move(c));
  }
  CorpusCurve circle;
  circle.label = "plane circle r=2";
  circle.data = plane_circle(2.0, 256);
  circle.report = classify_samples(circle.data, ctx.classify);
  out.push_back(std::move(circle));
  return out;
}

namespace detail {

ScenarioReport run_frame_identities(const ScenarioContext& ctx) {
  ScenarioReport rep;
  const std::vector<CorpusCurve> corpus = build_curve_corpus(ctx);
  std::size_t with_oracle = 0;
  double pyth = 0, liou = 0, theta_id = 0, drift = 0, frenet_k = 0, frenet_t = 0;
  std::string worst_liou, worst_k, worst_t;
  for (const CorpusCurve& c : corpus) {
    for (const CurveSample& s : c.data.samples) {
      pyth = std::max(pyth, std::abs(s.kappa * s.kappa - (s.kg * s.kg + s.kn * s.kn)) / (1 + s.kappa * s.kappa));
      theta_id = std::max({theta_id, std::abs(s.kg - std::sin(s.theta) * s.kappa),
                           std::abs(s.kn - std::cos(s.theta) * s.kappa)});
    }
    drift = std::max(drift, c.speed_drift);
    if (c.oracle) {
      ++with_oracle;
      for (double r : liouville_residuals(c.data, *c.oracle)) {
        if (std::abs(r) > liou) {
          liou = std::abs(r);
          worst_liou = c.label;
        }
      }
    }
    std::vector<Vec3> pos;
    for (const CurveSample& s : c.data.samples) pos.push_back(s.pos);
    try {
      const auto fr = frenet_apparatus(pos, c.data.step);
      // one-sided third derivatives at the ends are too coarse to compare
      for (std::size_t i = 4; i + 4 < fr.size(); ++i) {
        const CurveSample& s = c.data.samples[i];
        if (s.kappa <= 1e-3) continue;
        const double dk = std::abs(fr[i].kappa - s.kappa) / s.kappa;
        const double dt = std::abs(fr[i].tau - s.tau) / std::max(s.kappa, std::abs(s.tau));
        if (dk > frenet_k) {
          frenet_k = dk;
          worst_k = c.label + fmt(" s=%.3f", s.s);
        }
        if (dt > frenet_t) {
          frenet_t = dt;
          worst_t = c.label + fmt(" s=%.3f", s.s);
        }
      }
    } catch (const GeometryError&) {
      // straight pieces carry no Frenet frame
    }
  }
  rep.checks.push_back(check(1, "curve corpus size", corpus.size() >= 20 && with_oracle >= 20,
                             fmt("%zu curves, %zu on surfaces with closed-form oracles (>= 20)", corpus.size(),
                                 with_oracle)));
  rep.checks.push_back(check(1, "kappa^2 = kg^2 + kn^2", pyth < 1e-8, fmt("max relative residual %.3e (< 1e-8)", pyth)));
  rep.checks.push_back(check(1, "Liouville formula for kg", liou < 1e-6,
                             fmt("max |residual| %.3e (< 1e-6), worst on %s", liou, worst_liou.c_str())));
  rep.checks.push_back(check(0, "kg = sin(theta) kappa, kn = cos(theta) kappa", theta_id < 1e-10,
                             fmt("max residual %.3e (< 1e-10)", theta_id)));
  rep.checks.push_back(check(0, "Darboux kappa against finite-difference Frenet", frenet_k < 1e-4,
                             fmt("max relative difference %.3e (< 1e-4), worst at %s", frenet_k, worst_k.c_str())));
  // third differences of positions amplify integration noise by 1/h^3
  rep.checks.push_back(check(0, "Darboux tau against finite-difference Frenet", frenet_t < 1e-2,
                             fmt("max relative difference %.3e (< 1e-2), worst at %s", frenet_t, worst_t.c_str())));
  rep.checks.push_back(check(8, "unit speed of second-order corpus traces", drift < 1e-7,
                             fmt("max ||gamma'| - 1| %.3e (< 1e-7)", drift)));
  return rep;
}

ScenarioReport run_oracle_curvatures(const ScenarioContext& ctx) {
  ScenarioReport rep;
  const int nt = ctx.config.get_int("C2.nt", 10), nz = ctx.config.get_int("C2.nz", 20);
  const std::pair<std::string, GallerySurface> surfaces[] = {
      {"helix", make_helix_surface()},       {"enneper", make_enneper()}, {"crpc", make_crpc_revolution(2.0, 1)},
      {"bonnet", make_bonnet(0.5)},          {"cylinder", make_cylinder(1.0)}, {"catenoid", make_catenoid()},
  };
  for (const auto& [name, g] : surfaces) {
    const std::vector<Vec2> pts = grid_points(g.surface.domain(), nt, nz, 0.02);
    const std::vector<ShapeData> shape = sample_shape_parallel(g.surface, pts);
    double curv = 0, gauss = 0, ortho = 0, frame = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const OracleValues o = g.oracle->values(pts[i]);
      const double lo = std::min(o.k1, o.k2), hi = std::max(o.k1, o.k2);
      const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
      const ShapeData& sd = shape[i];
      curv = std::max({curv, std::abs(sd.kappa1 - lo) / scale, std::abs(sd.kappa2 - hi) / scale});
      const SurfaceJet2 j = jet2(g.surface, pts[i]);
      const FundamentalForms ff = fundamental_forms(j);
      const double k_forms = (ff.e * ff.g - ff.f * ff.f) / (ff.E * ff.G - ff.F * ff.F);
      gauss = std::max(gauss, std::abs(o.k1 * o.k2 - k_forms) / (scale * scale));
      ortho = std::max(ortho, std::abs(ff.F) / std::max(ff.E, ff.G));
      if (g.oracle->frame) {
        const OracleFrame f = g.oracle->frame(pts[i]);
        const bool sw = g.oracle->swapped(pts[i]);
        const Vec3 e1 = sw ? f.e2 : f.e1, e2 = sw ? f.e1 : f.e2;
        frame = std::max({frame, axis_distance(sd.normal, f.normal), axis_distance(sd.e1, e1), axis_distance(sd.e2, e2)});
      }
    }
    rep.checks.push_back(check(2, name + " principal curvatures", curv < 1e-8,
                               fmt("max relative difference %.3e (< 1e-8) at %zu points", curv, pts.size())));
    rep.checks.push_back(check(0, name + " oracle k1 k2 = (eg - f^2)/(EG - F^2)", gauss < 1e-8,
                               fmt("max relative difference %.3e (< 1e-8)", gauss)));
    rep.checks.push_back(check(0, name + " chart orthogonal", ortho <= 1e-12, fmt("max |F|/max(E,G) %.3e", ortho)));
    if (g.oracle->frame) {
      rep.checks.push_back(check(0, name + " published frame", frame < 1e-9,
                                 fmt("max distance of N, E1, E2 up to sign %.3e", frame)));
    }
  }
  return rep;
}

namespace {

struct Tally {
  std::size_t applicable = 0, excluded = 0;
  std::vector<std::string> counterexamples;

  Check result(const std::string& name) const {
    std::string list;
    for (const auto& c : counterexamples) list += (list.empty() ? "" : "; ") + c;
    return check(10, name, counterexamples.empty() && applicable > 0,
                 fmt("applicable %zu, excluded (gray zone) %zu, counterexamples %zu", applicable, excluded,
                     counterexamples.size()) +
                     (list.empty() ? "" : " [" + list + "]"));
  }
};

}  // namespace

ScenarioReport run_proposition_suite(const ScenarioContext& ctx) {
  ScenarioReport rep;
  const std::vector<CorpusCurve> corpus = build_curve_corpus(ctx);
  Tally equiv2, p50, p51, hg1;
  for (const CorpusCurve& c : corpus) {
    const ClassificationReport& r = c.report;
    const GrayZone& g = r.gray;
    const bool pg = r.pseudo_geodesic.is_constant;

    // Any two of planar, line of curvature, pseudo-geodesic imply the third.
    const int count = int(r.planar) + int(r.line_of_curvature) + int(pg);
    if (g.planar || g.line_of_curvature || g.pseudo_geodesic) {
      ++equiv2.excluded;
    } else {
      ++equiv2.applicable;
      if (count == 2) equiv2.counterexamples.push_back(c.label);
    }

    if (pg && !r.asymptotic) {
      if (g.pseudo_geodesic || g.asymptotic || g.helix || g.kntg || !r.helix.fitted) {
        ++p50.excluded;
      } else {
        ++p50.applicable;
        if (r.helix.is_helix != r.kntg_dep.dependent) p50.counterexamples.push_back(c.label);
      }
    }

    if (r.isogonal && r.isogonal->is_constant && pg && !r.line_of_curvature && !r.asymptotic) {
      if (g.pseudo_geodesic || g.line_of_curvature || g.asymptotic || g.helix || g.crpc || !r.helix.fitted) {
        ++p51.excluded;
      } else {
        ++p51.applicable;
        if (r.helix.is_helix != r.crpc_along.dependent) p51.counterexamples.push_back(c.label);
      }
    }

    if (r.helix.is_helix) {
      if (g.helix || g.pseudo_geodesic || g.axis_dot_n) {
        ++hg1.excluded;
      } else {
        ++hg1.applicable;
        if (pg != r.helix.axis_dot_n.is_constant) hg1.counterexamples.push_back(c.label);
      }
    }
  }
  rep.checks.push_back(equiv2.result("two of planar / line of curvature / pseudo-geodesic imply the third"));
  rep.checks.push_back(p50.result("pseudo-geodesic: helix iff (kn, taug) dependent"));
  rep.checks.push_back(p51.result("isogonal pseudo-geodesic: helix iff (kappa1, kappa2) dependent"));
  rep.checks.push_back(hg1.result("helix: pseudo-geodesic iff <axis, N> constant"));

  // Geodesic torsion along isogonals: constant on a CSkC surface, not on Enneper.
  bool cyl_const = true, enn_varies = false;
  std::size_t cyl = 0;
  for (const CorpusCurve& c : corpus) {
    if (!c.report.isogonal) continue;
    const bool iso = c.label.find("isogonal") != std::string::npos;
    if (!iso) continue;
    if (c.label.rfind("cylinder", 0) == 0) {
      ++cyl;
      cyl_const = cyl_const && c.report.taug_along.is_constant;
    }
    if (c.label.rfind("enneper", 0) == 0 && !c.report.taug_along.is_constant) enn_varies = true;
  }
  rep.checks.push_back(check(0, "geodesic torsion constant along cylinder isogonals", cyl > 0 && cyl_const,
                             fmt("%zu cylinder isogonals", cyl)));
  rep.checks.push_back(check(0, "an Enneper isogonal with varying geodesic torsion", enn_varies, ""));
  return rep;
}

ScenarioReport run_algebraic_identities(const ScenarioContext& ctx) {
  ScenarioReport rep;
  const std::vector<GallerySurface> surfaces = {make_helix_surface(), make_enneper(),   make_crpc_revolution(2.0, 1),
                                                make_bonnet(0.5),     make_cylinder(1.0), make_catenoid()};
  std::mt19937_64 rng(static_cast<std::uint64_t>(ctx.config.get_int("C12.seed", 20240917)));
  std::uniform_real_distribution<double> unit(0.0, 1.0), coef(-2.0, 2.0), angle(-kPi, kPi);
  const int draws = ctx.config.get_int("C12.draws", 100), points = ctx.config.get_int("C12.points", 20);

  std::vector<ShapeData> shapes;
  while (static_cast<int>(shapes.size()) < points) {
    const SurfaceDef& s = surfaces[shapes.size() % surfaces.size()].surface;
    const Domain& d = s.domain();
    const Vec2 p(d.t_min + (0.05 + 0.9 * unit(rng)) * (d.t_max - d.t_min),
                 d.z_min + (0.05 + 0.9 * unit(rng)) * (d.z_max - d.z_min));
    const ShapeData sd = shape_data_at(s, p);
    if (!sd.umbilic) shapes.push_back(sd);
  }
  double r1 = 0, r2 = 0;
  for (int k = 0; k < draws; ++k) {
    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng), phi0 = angle(rng);
    for (const ShapeData& sd : shapes) {
      const DirectionScalars ds =
          pointwise_direction_scalars(sd, std::cos(phi0) * sd.e1 + std::sin(phi0) * sd.e2);
      const double cp = std::cos(ds.phi), sp = std::sin(ds.phi);
      const double k1 = sd.kappa1, k2 = sd.kappa2;
      r1 = std::max(r1, std::abs(sp * cp * (a + b) * ds.kn + (a * sp * sp - b * cp * cp) * ds.taug -
                                 sp * cp * (a * k1 + b * k2)));
      r2 = std::max(r2, std::abs((d * cp + c * sp) * cp * k1 + (d * sp - c * cp) * sp * k2 - (c * ds.taug + d * ds.kn)));
    }
  }
  rep.checks.push_back(check(12, "identity (1): dependence of kappa1, kappa2 through kn, taug", r1 < 1e-10,
                             fmt("max residual %.3e (< 1e-10), %d draws x %d points", r1, draws, points)));
  rep.checks.push_back(check(12, "identity (2): c taug + d kn in principal terms", r2 < 1e-10,
                             fmt("max residual %.3e (< 1e-10), %d draws x %d points", r2, draws, points)));
  return rep;
}

}  // namespace detail
}  // namespace curvegeo
