#include "curvegeo/tracer.hpp"

#include <cmath>
#include <sstream>

#include "curvegeo/errors.hpp"

namespace curvegeo {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_request(const TraceRequest& req) {
  if (!(req.step > 0)) throw GeometryError(ErrorKind::InvalidArgument, "trace step must be positive");
  if (!(req.s_min <= 0 && req.s_max >= 0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "trace span must satisfy s_min <= 0 <= s_max");
  }
  if (!req.surface.domain().contains(req.start_uv)) {
    throw GeometryError(ErrorKind::OutOfDomain, "trace start outside the surface domain");
  }
}

// Output abscissae k * step inside the span, split into the forward
// (ascending from 0) and backward (descending from -step) halves.
void output_grid(const TraceRequest& req, std::vector<double>& fwd, std::vector<double>& bwd) {
  const double slack = 1e-9;
  const long k_max = static_cast<long>(std::floor(req.s_max / req.step + slack));
  const long k_min = static_cast<long>(std::ceil(req.s_min / req.step - slack));
  for (long k = 0; k <= k_max; ++k) fwd.push_back(static_cast<double>(k) * req.step);
  for (long k = -1; k >= k_min; --k) bwd.push_back(static_cast<double>(k) * req.step);
}

ExitKind exit_kind(ode::StopReason r) {
  switch (r) {
    case ode::StopReason::Completed: return ExitKind::Completed;
    case ode::StopReason::Boundary: return ExitKind::HitBoundary;
    case ode::StopReason::Umbilic: return ExitKind::HitUmbilic;
    case ode::StopReason::Singular:
    case ode::StopReason::SolverFailure: break;
  }
  return ExitKind::SolverFailure;
}

// E1 at p with the default sign rule, or aligned with `reference`.
struct FrameAt {
  SurfaceJet2 jet;
  ShapeData shape;
};

std::optional<FrameAt> frame_at(const SurfaceDef& surface, const Vec2& p, const Vec3* reference,
                                ode::RhsStatus& status) {
  if (!surface.domain().contains(p)) {
    status = ode::RhsStatus::OutOfDomain;
    return std::nullopt;
  }
  FrameAt f;
  try {
    f.jet = jet2(surface, p);
  } catch (const GeometryError&) {
    status = ode::RhsStatus::Singular;
    return std::nullopt;
  }
  f.shape = shape_data(f.jet, fundamental_forms(f.jet));
  if (reference) align_principal_frame(f.shape, *reference);
  status = ode::RhsStatus::Ok;
  return f;
}

// Velocity field of the isogonal flow, sign-continuous E1 via `reference`.
struct IsogonalField {
  const SurfaceDef& surface;
  double cos_phi, sin_phi, speed;
  Vec3 reference;

  ode::RhsResult<2> operator()(double, const Vec2& y) const {
    ode::RhsResult<2> r;
    auto f = frame_at(surface, y, &reference, r.status);
    if (!f) return r;
    if (f->shape.umbilic) {
      r.status = ode::RhsStatus::Umbilic;
      return r;
    }
    const ShapeData& sd = f->shape;
    const double det = sd.f1 * sd.g2 - sd.g1 * sd.f2;
    if (std::abs(det) < 1e-12) {
      r.status = ode::RhsStatus::Singular;
      return r;
    }
    const double a = speed * cos_phi, b = speed * sin_phi;
    r.dy = Vec2((a * sd.g2 - b * sd.g1) / det, (sd.f1 * b - sd.f2 * a) / det);
    return r;
  }
};

// Second-order pseudo-geodesic system on (t, z, t', z').
struct PseudoGeodesicField {
  const SurfaceDef& surface;
  double tan_theta;

  ode::RhsResult<4> operator()(double, const Eigen::Vector4d& y) const {
    ode::RhsResult<4> r;
    const Vec2 p(y[0], y[1]);
    if (!surface.domain().contains(p)) {
      r.status = ode::RhsStatus::OutOfDomain;
      return r;
    }
    SurfaceJet2 j;
    try {
      j = jet2(surface, p);
    } catch (const GeometryError&) {
      r.status = ode::RhsStatus::Singular;
      return r;
    }
    const FundamentalForms ff = fundamental_forms(j);
    const ShapeData sd = shape_data(j, ff);
    const Christoffel& c = sd.christoffel;
    const double tp = y[2], zp = y[3];
    const double second = ff.e * tp * tp + 2 * ff.f * tp * zp + ff.g * zp * zp;
    const double tpp = -(c.g1_11 * tp * tp + 2 * c.g1_12 * tp * zp + c.g1_22 * zp * zp) -
                       tan_theta * zp * std::sqrt(ff.G / ff.E) * second;
    const double zpp = -(c.g2_11 * tp * tp + 2 * c.g2_12 * tp * zp + c.g2_22 * zp * zp) +
                       tan_theta * tp * std::sqrt(ff.E / ff.G) * second;
    r.dy << tp, zp, tpp, zpp;
    return r;
  }
};

// Directional derivative of the isogonal field along itself.
Vec2 isogonal_acceleration(const IsogonalField& field, const Vec2& y, const Vec2& v) {
  const double h = 1e-6;
  const auto plus = field(0, Vec2(y + h * v));
  const auto minus = field(0, Vec2(y - h * v));
  if (plus.status == ode::RhsStatus::Ok && minus.status == ode::RhsStatus::Ok) {
    return (plus.dy - minus.dy) / (2 * h);
  }
  const auto here = field(0, y);
  if (plus.status == ode::RhsStatus::Ok) return (plus.dy - here.dy) / h;
  if (minus.status == ode::RhsStatus::Ok) return (here.dy - minus.dy) / h;
  return Vec2::Zero();
}

TraceExit make_exit(const ode::Result<2>& r) { return {exit_kind(r.reason), r.s_stop}; }
TraceExit make_exit(const ode::Result<4>& r) { return {exit_kind(r.reason), r.s_stop}; }

}  // namespace

const char* to_string(ExitKind kind) {
  switch (kind) {
    case ExitKind::Completed: return "completed";
    case ExitKind::HitBoundary: return "hit_boundary";
    case ExitKind::HitUmbilic: return "hit_umbilic";
    case ExitKind::SolverFailure: return "solver_failure";
  }
  return "unknown";
}

TraceExit Trace::exit() const {
  if (forward.kind != ExitKind::Completed) return forward;
  return backward;
}

Vec2 uv_direction(const SurfaceDef& surface, const Vec2& p_uv, double angle) {
  const SurfaceJet2 j = jet2(surface, p_uv);
  const FundamentalForms ff = fundamental_forms(j);
  const ShapeData sd = shape_data(j, ff);
  if (sd.umbilic) {
    throw GeometryError(ErrorKind::UmbilicPoint, "direction angle undefined at an umbilic start");
  }
  const double det = sd.f1 * sd.g2 - sd.g1 * sd.f2;
  const double a = std::cos(angle), b = std::sin(angle);
  return Vec2((a * sd.g2 - b * sd.g1) / det, (sd.f1 * b - sd.f2 * a) / det);
}

Trace trace_isogonal(const TraceRequest& req) {
  validate_request(req);
  const auto* mode = std::get_if<IsogonalMode>(&req.mode);
  if (!mode) throw GeometryError(ErrorKind::InvalidArgument, "trace_isogonal needs an isogonal request");
  if (!(mode->speed > 0)) throw GeometryError(ErrorKind::InvalidArgument, "isogonal speed must be positive");

  ode::RhsStatus status;
  auto start = frame_at(req.surface, req.start_uv, nullptr, status);
  if (!start) throw GeometryError(ErrorKind::SingularJet, "singular chart at the trace start");
  if (start->shape.umbilic) {
    throw GeometryError(ErrorKind::UmbilicEncountered, "isogonal trace cannot start at an umbilic point");
  }

  Trace out{req, {}, {}, {}};
  std::vector<double> fwd, bwd;
  output_grid(req, fwd, bwd);

  auto run = [&](const std::vector<double>& grid, double s_end, std::vector<CurveStation>& stations) {
    IsogonalField field{req.surface, std::cos(mode->phi), std::sin(mode->phi), mode->speed,
                        start->shape.e1};
    // The frame reference follows accepted steps; dense outputs between
    // two accepted points inherit it, which is safe since E1 cannot turn
    // by pi/2 within one step.
    auto on_accept = [&](double, const Vec2& y) {
      ode::RhsStatus st;
      if (auto f = frame_at(req.surface, y, &field.reference, st)) field.reference = f->shape.e1;
    };
    const auto res = ode::integrate<2>(field, 0.0, req.start_uv, s_end, grid, req.tolerances, on_accept);
    // Reference for post-processing restarts at the start frame and walks the grid.
    IsogonalField post{req.surface, field.cos_phi, field.sin_phi, field.speed, start->shape.e1};
    for (std::size_t i = 0; i < res.values.size(); ++i) {
      const Vec2 y = res.values[i];
      ode::RhsStatus st;
      if (auto f = frame_at(req.surface, y, &post.reference, st)) post.reference = f->shape.e1;
      const auto v = post(0, y);
      CurveStation cs;
      cs.s = grid[i];
      cs.uv = y;
      cs.uv_vel = v.dy;
      cs.uv_acc = isogonal_acceleration(post, y, v.dy);
      stations.push_back(cs);
    }
    return make_exit(res);
  };

  std::vector<CurveStation> forward, backward;
  out.forward = run(fwd, req.s_max, forward);
  out.backward = req.s_min < 0 ? run(bwd, req.s_min, backward) : TraceExit{ExitKind::Completed, 0.0};
  out.stations.assign(backward.rbegin(), backward.rend());
  out.stations.insert(out.stations.end(), forward.begin(), forward.end());
  return out;
}

Trace trace_pseudogeodesic(const TraceRequest& req) {
  validate_request(req);
  double theta = 0;
  InitialDirection dir;
  if (const auto* m = std::get_if<PseudoGeodesicMode>(&req.mode)) {
    theta = m->theta;
    dir = m->direction;
  } else if (const auto* g = std::get_if<GeodesicMode>(&req.mode)) {
    dir = g->direction;
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "trace_pseudogeodesic needs a pseudo-geodesic request");
  }
  if (!(std::abs(theta) < kPi / 2)) {
    throw GeometryError(ErrorKind::ThetaOutOfRange, "pseudo-geodesic angle must satisfy |theta| < pi/2");
  }
  if (!req.surface.orthogonal()) {
    throw GeometryError(ErrorKind::NonOrthogonalChart, "pseudo-geodesic equations need an orthogonal chart");
  }
  const SurfaceJet2 j0 = jet2(req.surface, req.start_uv);
  const FundamentalForms ff0 = fundamental_forms(j0);
  if (std::abs(ff0.F) > 1e-8 * std::max(ff0.E, ff0.G)) {
    throw GeometryError(ErrorKind::NonOrthogonalChart, "chart is not orthogonal at the trace start");
  }

  Vec2 v;
  if (dir.angle) {
    v = uv_direction(req.surface, req.start_uv, *dir.angle);
  } else if (dir.uv_velocity) {
    v = *dir.uv_velocity;
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "initial direction missing");
  }
  const double speed = (v.x() * j0.d_t + v.y() * j0.d_z).norm();
  if (!(speed > 0)) throw GeometryError(ErrorKind::InvalidArgument, "initial direction is zero");
  v /= speed;

  Trace out{req, {}, {}, {}};
  std::vector<double> fwd, bwd;
  output_grid(req, fwd, bwd);
  const PseudoGeodesicField field{req.surface, std::tan(theta)};
  Eigen::Vector4d y0;
  y0 << req.start_uv.x(), req.start_uv.y(), v.x(), v.y();

  auto run = [&](const std::vector<double>& grid, double s_end, std::vector<CurveStation>& stations) {
    const auto res = ode::integrate<4>(field, 0.0, y0, s_end, grid, req.tolerances, [](double, const auto&) {});
    for (std::size_t i = 0; i < res.values.size(); ++i) {
      const Eigen::Vector4d& y = res.values[i];
      const auto d = field(0, y);
      CurveStation cs;
      cs.s = grid[i];
      cs.uv = Vec2(y[0], y[1]);
      cs.uv_vel = Vec2(y[2], y[3]);
      cs.uv_acc = Vec2(d.dy[2], d.dy[3]);
      stations.push_back(cs);
    }
    return make_exit(res);
  };

  std::vector<CurveStation> forward, backward;
  out.forward = run(fwd, req.s_max, forward);
  out.backward = req.s_min < 0 ? run(bwd, req.s_min, backward) : TraceExit{ExitKind::Completed, 0.0};
  out.stations.assign(backward.rbegin(), backward.rend());
  out.stations.insert(out.stations.end(), forward.begin(), forward.end());
  return out;
}

Trace trace_geodesic(const TraceRequest& req) {
  TraceRequest r = req;
  if (const auto* g = std::get_if<GeodesicMode>(&req.mode)) {
    r.mode = PseudoGeodesicMode{0.0, g->direction};
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "trace_geodesic needs a geodesic request");
  }
  Trace out = trace_pseudogeodesic(r);
  out.request = req;
  return out;
}

Trace trace(const TraceRequest& req) {
  return std::visit(overloaded{[&](const IsogonalMode&) { return trace_isogonal(req); },
                               [&](const PseudoGeodesicMode&) { return trace_pseudogeodesic(req); },
                               [&](const GeodesicMode&) { return trace_geodesic(req); }},
                    req.mode);
}

Vec2 isogonal_map(const SurfaceDef& surface, const Vec2& p_uv, const Vec2& v, const ode::Options& tolerances) {
  if (v.norm() == 0) return p_uv;
  const SurfaceJet2 j = jet2(surface, p_uv);
  const ShapeData sd = shape_data(j, fundamental_forms(j));
  if (sd.umbilic) throw GeometryError(ErrorKind::UmbilicPoint, "isogonal map undefined at an umbilic point");
  const Vec3 w = v.x() * j.d_t + v.y() * j.d_z;
  TraceRequest req{surface, p_uv, IsogonalMode{std::atan2(w.dot(sd.e2), w.dot(sd.e1)), w.norm()}, 0.0, 1.0, 1.0,
                   tolerances};
  const Trace tr = trace_isogonal(req);
  if (tr.stations.size() < 2 || tr.forward.kind != ExitKind::Completed) {
    std::ostringstream os;
    os << "isogonal line leaves the chart at s = " << tr.forward.s_stop << " before reaching 1";
    throw GeometryError(ErrorKind::BoundaryExit, os.str());
  }
  return tr.stations.back().uv;
}

}  // namespace curvegeo
