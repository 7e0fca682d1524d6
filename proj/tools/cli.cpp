#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>

#include "curvegeo/errors.hpp"
#include "curvegeo/gallery.hpp"
#include "curvegeo/io.hpp"
#include "curvegeo/tracer.hpp"

namespace curvegeo::cli {

namespace {

namespace fs = std::filesystem;

template <class... Args>
std::string fmt(const char* f, Args... args) {
  const int n = std::snprintf(nullptr, 0, f, args...);
  std::string out(static_cast<std::size_t>(std::max(n, 0)), '\0');
  std::snprintf(out.data(), out.size() + 1, f, args...);
  return out;
}

std::string angle(double rad) { return fmt("%.9f rad (%.6f deg)", rad, rad * 180.0 / kPi); }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

struct Globals {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> tol_abs, tol_rel;
  bool serial = false;
};

struct TraceArgs {
  std::string surface;
  std::vector<std::string> params;
  std::string mode;
  std::optional<double> phi, theta, direction, s_min, s_max, step, speed;
  std::string direction_uv, start;
  bool published_phi = false;
  std::string name;
};

void add_trace_options(CLI::App* cmd, TraceArgs& a) {
  cmd->add_option("--surface", a.surface, "helix, enneper, crpc, bonnet, cylinder, catenoid, sphere, plane");
  cmd->add_option("--param", a.params, "surface parameter key=value (repeatable)");
  cmd->add_option("--mode", a.mode, "isogonal, pseudo-geodesic or geodesic")
      ->check(CLI::IsMember({"isogonal", "pseudo-geodesic", "geodesic"}));
  cmd->add_option("--phi", a.phi, "isogonal angle from E1 (radians)");
  cmd->add_flag("--published-phi", a.published_phi,
                "read --phi from the first published principal direction instead of E1");
  cmd->add_option("--theta", a.theta, "pseudo-geodesic angle between principal normal and N (radians)");
  cmd->add_option("--direction", a.direction, "initial direction as an angle from E1 (radians)");
  cmd->add_option("--direction-uv", a.direction_uv, "initial direction as a uv velocity 'a,b'");
  cmd->add_option("--start", a.start, "start point 't,z'");
  cmd->add_option("--s-min", a.s_min, "lower arc-length bound (<= 0)");
  cmd->add_option("--s-max", a.s_max, "upper arc-length bound (>= 0)");
  cmd->add_option("--step", a.step, "output grid spacing");
  cmd->add_option("--speed", a.speed, "isogonal field speed");
}

ScenarioContext make_context(const io::Config& cfg, const Globals& g) {
  ScenarioContext ctx;
  ctx.config = cfg;
  ode::Options& o = ctx.tolerances;
  o.abs_tol = cfg.get_double("ode.abs_tol", o.abs_tol);
  o.rel_tol = cfg.get_double("ode.rel_tol", o.rel_tol);
  o.initial_step = cfg.get_double("ode.initial_step", o.initial_step);
  o.min_step = cfg.get_double("ode.min_step", o.min_step);
  ClassifyOptions& c = ctx.classify;
  c.abs_tol = g.tol_abs.value_or(cfg.get_double("classify.abs_tol", c.abs_tol));
  c.rel_tol = g.tol_rel.value_or(cfg.get_double("classify.rel_tol", c.rel_tol));
  c.flag_tol = cfg.get_double("classify.flag_tol", c.flag_tol);
  c.dependence_threshold = cfg.get_double("classify.dependence_threshold", c.dependence_threshold);
  c.helix_axis_tol = cfg.get_double("classify.helix_axis_tol", c.helix_axis_tol);
  c.gray_factor = cfg.get_double("classify.gray_factor", c.gray_factor);
  return ctx;
}

GallerySurface resolve_surface(const std::string& name, const std::vector<std::string>& params,
                               const io::Config& cfg) {
  std::map<std::string, double> p = cfg.numeric_section("surface." + name + ".");
  for (const std::string& kv : params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--param", "expected key=value, got '" + kv + "'");
    p[kv.substr(0, eq)] = io::parse_double(kv.substr(eq + 1), "--param " + kv.substr(0, eq));
  }
  return make_gallery_surface(name, p);
}

struct Resolved {
  GallerySurface gallery;
  TraceRequest request;
};

Resolved resolve_trace(const TraceArgs& a, const io::Config& cfg, const ScenarioContext& ctx) {
  const std::string surface = a.surface.empty() ? cfg.get_string("trace.surface", "") : a.surface;
  if (surface.empty()) throw CLI::RequiredError("--surface");
  GallerySurface g = resolve_surface(surface, a.params, cfg);
  const Vec2 start = a.start.empty() ? cfg.get_vec2("trace.start", Vec2::Zero()) : io::parse_vec2(a.start, "--start");
  const std::string mode = a.mode.empty() ? cfg.get_string("trace.mode", "isogonal") : a.mode;
  auto number = [&](const std::optional<double>& v, const char* key) -> std::optional<double> {
    if (v) return v;
    if (cfg.has(key)) return cfg.get_double(key, 0);
    return std::nullopt;
  };
  InitialDirection dir = InitialDirection::from_angle(number(a.direction, "trace.direction").value_or(0.0));
  const std::string uv = a.direction_uv.empty() ? cfg.get_string("trace.direction_uv", "") : a.direction_uv;
  if (!uv.empty()) dir = InitialDirection::from_uv(io::parse_vec2(uv, "--direction-uv"));

  TraceMode tm;
  if (mode == "isogonal") {
    const auto phi = number(a.phi, "trace.phi");
    if (!phi) throw CLI::RequiredError("--phi");
    double engine = *phi;
    if (a.published_phi || cfg.get_int("trace.published_phi", 0) != 0) {
      if (!g.oracle) throw CLI::ValidationError("--published-phi", "surface '" + surface + "' has no published frame");
      engine = g.oracle->engine_phi(*phi, start);
    }
    tm = IsogonalMode{engine, number(a.speed, "trace.speed").value_or(1.0)};
  } else if (mode == "pseudo-geodesic") {
    const auto theta = number(a.theta, "trace.theta");
    if (!theta) throw CLI::RequiredError("--theta");
    tm = PseudoGeodesicMode{*theta, dir};
  } else if (mode == "geodesic") {
    tm = GeodesicMode{dir};
  } else {
    throw CLI::ValidationError("--mode", "unknown mode '" + mode + "'");
  }
  TraceRequest req{g.surface,
                   start,
                   tm,
                   number(a.s_min, "trace.s_min").value_or(-1.0),
                   number(a.s_max, "trace.s_max").value_or(1.0),
                   number(a.step, "trace.step").value_or(0.01),
                   ctx.tolerances};
  return {std::move(g), std::move(req)};
}

std::string describe_request(const TraceRequest& req) {
  std::string out;
  if (const auto* iso = std::get_if<IsogonalMode>(&req.mode)) {
    out = "mode: isogonal, phi " + angle(iso->phi) + fmt(", speed %.17g", iso->speed);
  } else if (const auto* pg = std::get_if<PseudoGeodesicMode>(&req.mode)) {
    out = "mode: pseudo-geodesic, requested theta " + angle(pg->theta);
  } else {
    out = "mode: geodesic";
  }
  return out + fmt("\nstart: (%.17g, %.17g)\nspan: [%.17g, %.17g], step %.17g\n", req.start_uv.x(), req.start_uv.y(),
                   req.s_min, req.s_max, req.step);
}

std::string describe_trace(const Trace& tr) {
  const TraceExit e = tr.exit();
  std::string out = fmt("exit: %s", to_string(e.kind));
  if (e.kind != ExitKind::Completed) out += fmt(" at s = %.17g", e.s_stop);
  out += fmt("\nstations: %zu", tr.stations.size());
  if (!tr.stations.empty()) out += fmt(", s in [%.17g, %.17g]", tr.stations.front().s, tr.stations.back().s);
  return out + "\n";
}

std::string classification_text(const CurveData& data, const ClassifyOptions& options) {
  if (data.samples.size() < 9) return fmt("classification: skipped, %zu samples (< 9)\n", data.samples.size());
  return format_report(classify_samples(data, options));
}

fs::path output_path(const Globals& g, const std::string& file) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / file;
}

int cmd_trace(const TraceArgs& a, const io::Config& cfg, const Globals& g, std::ostream& out) {
  const ScenarioContext ctx = make_context(cfg, g);
  const Resolved r = resolve_trace(a, cfg, ctx);
  const Trace tr = trace(r.request);
  const CurveData data = curve_scalars(r.request.surface, tr.stations);
  const fs::path path = output_path(g, (a.name.empty() ? std::string("trace") : a.name) + ".csv");
  io::write_csv(path, data);
  out << describe_request(r.request) << describe_trace(tr) << "csv: " << path.string() << "\n"
      << classification_text(data, ctx.classify);
  return 0;
}

int cmd_classify(const TraceArgs& a, const std::string& csv, const io::Config& cfg, const Globals& g,
                 std::ostream& out) {
  const ScenarioContext ctx = make_context(cfg, g);
  if (!csv.empty()) {
    const std::string surface = a.surface.empty() ? cfg.get_string("trace.surface", "") : a.surface;
    if (surface.empty()) throw CLI::RequiredError("--surface (needed to re-evaluate frames from --csv)");
    const GallerySurface gs = resolve_surface(surface, a.params, cfg);
    const std::vector<io::CsvRow> rows = io::read_csv(csv);
    const CurveData data = io::curve_data_from_csv(gs.surface, rows);
    out << "csv: " << csv << "\n" << classification_text(data, ctx.classify);
    return 0;
  }
  const Resolved r = resolve_trace(a, cfg, ctx);
  const Trace tr = trace(r.request);
  out << describe_request(r.request) << describe_trace(tr)
      << classification_text(curve_scalars(r.request.surface, tr.stations), ctx.classify);
  return 0;
}

int cmd_verify(const std::string& id, bool write_files, const io::Config& cfg, const Globals& g,
               std::ostream& out) {
  const ScenarioContext ctx = make_context(cfg, g);
  auto save = [&](const ScenarioReport& r) {
    if (write_files) io::write_text_atomic(output_path(g, "verify_" + r.id + ".txt"), format_scenario(r));
  };
  if (id == "all") {
    const AcceptanceReport rep = evaluate_acceptance(ctx, !g.serial);
    for (const ScenarioReport& r : rep.scenarios) save(r);
    out << format_acceptance(rep);
    return rep.passed() ? 0 : 1;
  }
  const std::vector<std::string> ids = scenario_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw CLI::ValidationError("verify", "unknown scenario '" + id + "'");
  }
  const ScenarioReport r = run_scenario(id, ctx);
  save(r);
  out << format_scenario(r);
  return r.passed() ? 0 : 1;
}

struct ExportArgs {
  TraceArgs trace;
  bool figure1 = false;
  std::string format = "both";
  int nt = 50, nz = 50;
};

struct ExportCurve {
  std::string name;
  CurveData data;
};

void write_outputs(const std::string& base, const std::string& format, const SurfaceDef& surface, int nt, int nz,
                   const std::vector<ExportCurve>& curves, const Globals& g, std::ostream& out) {
  for (const ExportCurve& c : curves) {
    if (c.data.samples.empty()) {
      throw GeometryError(ErrorKind::InvalidArgument, "curve '" + c.name + "' is empty; nothing to export");
    }
  }
  if (format == "csv" || format == "both") {
    for (const ExportCurve& c : curves) {
      const fs::path p = output_path(g, (curves.size() == 1 ? base : base + "_" + c.name) + ".csv");
      io::write_csv(p, c.data);
      out << "csv: " << p.string() << "\n";
    }
  }
  if (format == "obj" || format == "both") {
    const io::MeshGrid mesh = io::sample_mesh(surface, nt, nz, !g.serial);
    std::vector<std::vector<Vec3>> polylines;
    std::vector<std::string> names;
    for (const ExportCurve& c : curves) {
      std::vector<Vec3> pts;
      for (const CurveSample& s : c.data.samples) pts.push_back(s.pos);
      polylines.push_back(std::move(pts));
      names.push_back(c.name);
    }
    const fs::path p = output_path(g, base + ".obj");
    io::write_obj(p, mesh, polylines, names);
    out << "obj: " << p.string() << fmt(" (%dx%d mesh, %zu curves)\n", nt, nz, curves.size());
  }
}

int cmd_export(const ExportArgs& a, const io::Config& cfg, const Globals& g, std::ostream& out) {
  const ScenarioContext ctx = make_context(cfg, g);
  if (a.figure1) {
    // Enneper surface with the two generalized helices z = +-t/2 through the origin.
    const double hw = cfg.get_double("figure1.half_width", 2.0);
    const GallerySurface en = make_enneper(hw);
    std::vector<ExportCurve> curves;
    for (double m : {0.5, -0.5}) {
      // arc length of z = m t from t = 0 on Enneper
      const double te = 0.99 * std::min(hw, hw / std::abs(m));
      const double se = std::sqrt(1 + m * m) * (te + (1 + m * m) * te * te * te / 3);
      const TraceRequest req{en.surface, Vec2::Zero(), GeodesicMode{InitialDirection::from_uv(Vec2(1, m))},
                             -se, se, cfg.get_double("figure1.step", 0.01), ctx.tolerances};
      const Trace tr = trace(req);
      if (!tr.completed()) {
        throw GeometryError(ErrorKind::BoundaryExit, "figure geodesic stopped early: " + describe_trace(tr));
      }
      curves.push_back({m > 0 ? "geodesic_m_plus_half" : "geodesic_m_minus_half",
                        curve_scalars(en.surface, tr.stations)});
      out << fmt("geodesic m = %+.1f: ", m) << describe_trace(tr);
    }
    const int n = cfg.get_int("figure1.n", 50);
    write_outputs(a.trace.name.empty() ? "figure1" : a.trace.name, a.format, en.surface, n, n, curves, g, out);
    return 0;
  }
  const Resolved r = resolve_trace(a.trace, cfg, ctx);
  const Trace tr = trace(r.request);
  out << describe_request(r.request) << describe_trace(tr);
  if (!tr.completed()) {
    throw GeometryError(ErrorKind::BoundaryExit,
                        "trace did not complete; shorten the span to export (" + std::string(to_string(tr.exit().kind)) +
                            ")");
  }
  write_outputs(a.trace.name.empty() ? "export" : a.trace.name, a.format, r.request.surface, a.nt, a.nz,
                {{"curve", curve_scalars(r.request.surface, tr.stations)}}, g, out);
  return 0;
}

std::string verdict(const ConstancyVerdict& v) {
  return fmt("max_dev %.3e, tolerance %.3e", v.max_dev, v.tolerance_used);
}

std::string dependence(const DependenceVerdict& d) {
  if (d.degenerate) return "degenerate (both sequences constant)";
  return fmt("coefficients (%.9f, %.9f), residual %.3e", d.coeffs.x(), d.coeffs.y(), d.residual);
}

}  // namespace

std::string format_report(const ClassificationReport& r) {
  std::string out;
  if (r.isogonal) {
    out += fmt("isogonal: %s, phi mean ", yes_no(r.isogonal->is_constant)) + angle(r.isogonal->mean) + ", " +
           verdict(*r.isogonal) + "\n";
  } else {
    out += "isogonal: undefined (the curve meets an umbilic)\n";
  }
  out += fmt("pseudo_geodesic: %s, theta mean ", yes_no(r.pseudo_geodesic.is_constant)) +
         angle(r.pseudo_geodesic.mean) + ", " + verdict(r.pseudo_geodesic) + "\n";
  out += fmt("geodesic: %s, max |kg| %.3e\n", yes_no(r.geodesic), r.max_abs_kg);
  out += fmt("line_of_curvature: %s, max |taug| %.3e\n", yes_no(r.line_of_curvature), r.max_abs_taug);
  out += fmt("asymptotic: %s, max |kn| %.3e\n", yes_no(r.asymptotic), r.max_abs_kn);
  out += fmt("planar: %s, max |tau| %.3e\n", yes_no(r.planar), r.max_abs_tau);
  const HelixReport& h = r.helix;
  if (h.fitted) {
    out += fmt("generalized_helix: %s, (m, n) = (%.9f, %.9f), psi ", yes_no(h.is_helix), h.mn.x(), h.mn.y()) +
           angle(h.psi) + "\n";
    out += fmt("helix_axis: (%.9f, %.9f, %.9f), <axis, T> %s\n", h.axis.x(), h.axis.y(), h.axis.z(),
               verdict(h.axis_dot_t).c_str());
    out += fmt("axis_dot_n: %s, mean %.9f, ", yes_no(h.axis_dot_n.is_constant), h.axis_dot_n.mean) +
           verdict(h.axis_dot_n) + "\n";
  } else {
    out += "generalized_helix: no, curvature vanishes on the curve\n";
  }
  out += fmt("kappa_tau_dependent: %s, ", yes_no(h.dependence.dependent)) + dependence(h.dependence) + "\n";
  out += fmt("kn_taug_dependent: %s, ", yes_no(r.kntg_dep.dependent)) + dependence(r.kntg_dep) + "\n";
  out += fmt("kappa1_kappa2_dependent: %s, ", yes_no(r.crpc_along.dependent)) + dependence(r.crpc_along) + "\n";
  out += fmt("kappa1_minus_kappa2_constant: %s, ", yes_no(r.cskc_along.is_constant)) + verdict(r.cskc_along) + "\n";
  out += fmt("taug_constant: %s, ", yes_no(r.taug_along.is_constant)) + verdict(r.taug_along) + "\n";
  std::string gray;
  const std::pair<bool, const char*> flags[] = {
      {r.gray.line_of_curvature, "line_of_curvature"}, {r.gray.asymptotic, "asymptotic"},
      {r.gray.planar, "planar"},                       {r.gray.geodesic, "geodesic"},
      {r.gray.pseudo_geodesic, "pseudo_geodesic"},     {r.gray.helix, "generalized_helix"},
      {r.gray.kntg, "kn_taug_dependent"},              {r.gray.crpc, "kappa1_kappa2_dependent"},
      {r.gray.axis_dot_n, "axis_dot_n"},
  };
  for (const auto& [on, name] : flags) {
    if (on) gray += (gray.empty() ? "" : ", ") + std::string(name);
  }
  out += "gray_zone: " + (gray.empty() ? std::string("none") : gray) + "\n";
  return out;
}

std::string format_scenario(const ScenarioReport& r) {
  std::string out = fmt("[%s] %s %s\n", r.passed() ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str());
  if (!r.error.empty()) out += "  error: " + r.error + "\n";
  for (const Check& c : r.checks) {
    const std::string tag = c.criterion > 0 ? fmt("criterion %d", c.criterion) : std::string("supporting");
    out += fmt("  %s %s (%s): ", c.passed ? "ok  " : "FAIL", c.name.c_str(), tag.c_str()) + c.detail + "\n";
  }
  return out;
}

std::string format_acceptance(const AcceptanceReport& rep) {
  std::string out;
  for (const ScenarioReport& r : rep.scenarios) out += format_scenario(r);
  out += "\nacceptance criteria\n";
  std::size_t passed = 0;
  for (const CriterionResult& c : rep.criteria) {
    passed += c.passed;
    out += fmt("  [%s] %2d %s (%zu checks)\n", c.passed ? "PASS" : "FAIL", c.number, c.title.c_str(), c.checks.size());
  }
  out += fmt("%zu/%zu criteria passed\n", passed, rep.criteria.size());
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Isogonal and pseudo-geodesic lines on parametrized surfaces", "curvegeo"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--tol-abs", g.tol_abs, "absolute tolerance of the classification constancy tests");
  app.add_option("--tol-rel", g.tol_rel, "relative tolerance of the classification constancy tests");
  app.add_flag("--serial", g.serial, "run kernels on one thread");

  TraceArgs trace_args;
  CLI::App* trace_cmd = app.add_subcommand("trace", "trace a curve and write its Darboux data as CSV");
  add_trace_options(trace_cmd, trace_args);
  trace_cmd->add_option("--name", trace_args.name, "output file stem (default trace)");

  TraceArgs classify_args;
  std::string csv;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a traced curve or a CSV written by trace");
  add_trace_options(classify_cmd, classify_args);
  classify_cmd->add_option("--csv", csv, "CSV file to re-classify (needs --surface)")->check(CLI::ExistingFile);

  std::string verify_id;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a named scenario or the whole acceptance suite");
  verify_cmd->add_option("id", verify_id, "S1..S8, C1, C2, C10, C12 or all")->required();

  ExportArgs export_args;
  CLI::App* export_cmd = app.add_subcommand("export", "write a traced curve and its surface mesh as CSV and OBJ");
  add_trace_options(export_cmd, export_args.trace);
  export_cmd->add_option("--name", export_args.trace.name, "output file stem");
  export_cmd->add_flag("--figure1", export_args.figure1,
                       "Enneper surface with the two generalized helices through the origin");
  export_cmd->add_option("--format", export_args.format, "csv, obj or both")
      ->check(CLI::IsMember({"csv", "obj", "both"}));
  export_cmd->add_option("--nt", export_args.nt, "mesh resolution in t")->check(CLI::PositiveNumber);
  export_cmd->add_option("--nz", export_args.nz, "mesh resolution in z")->check(CLI::PositiveNumber);

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-' && !app.get_subcommand_no_throw(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "' (expected trace, classify, verify or export)\n";
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    const io::Config cfg = g.config_path.empty() ? io::Config{} : io::Config::load(g.config_path);
    if (*trace_cmd) return cmd_trace(trace_args, cfg, g, out);
    if (*classify_cmd) return cmd_classify(classify_args, csv, cfg, g, out);
    if (*verify_cmd) return cmd_verify(verify_id, app.count("--out") > 0, cfg, g, out);
    if (*export_cmd) return cmd_export(export_args, cfg, g, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace curvegeo::cli
