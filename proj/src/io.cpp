#include "curvegeo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "curvegeo/errors.hpp"
#include "curvegeo/grid.hpp"
#include "curvegeo/numerics.hpp"

namespace curvegeo::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0;
  const char* first = t.data();
  if (!t.empty() && t[0] == '+') ++first;
  const auto res = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw GeometryError(ErrorKind::Config, "cannot read a number from '" + text + "' (" + what + ")");
  }
  return v;
}

Vec2 parse_vec2(const std::string& text, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw GeometryError(ErrorKind::Config, "expected 'a,b' for " + what + ", got '" + text + "'");
  return Vec2(parse_double(parts[0], what), parse_double(parts[1], what));
}

std::string csv_row(const CurveSample& s) {
  const double fields[] = {s.s,  s.uv.x(), s.uv.y(), s.pos.x(), s.pos.y(), s.pos.z(),
                           s.kg, s.kn,     s.taug,   s.phi ? *s.phi : std::nan(""),
                           s.theta, s.kappa, s.tau};
  std::string out;
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    if (i) out += ',';
    out += format_double(fields[i]);
  }
  return out;
}

std::string to_csv(const CurveData& data) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const CurveSample& s : data.samples) {
    out += csv_row(s);
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw GeometryError(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    os.flush();
    if (!os) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw GeometryError(ErrorKind::Io, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw GeometryError(ErrorKind::Io, "cannot move output into place at " + path.string());
  }
}

void write_csv(const std::filesystem::path& path, const CurveData& data) {
  if (data.samples.empty()) throw GeometryError(ErrorKind::InvalidArgument, "refusing to export an empty trace");
  write_text_atomic(path, to_csv(data));
}

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || trim(line) != kCsvHeader) {
    throw GeometryError(ErrorKind::Io, "CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 13) {
      throw GeometryError(ErrorKind::Io, "CSV line " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                                             " fields, expected 13");
    }
    double v[13];
    for (int i = 0; i < 13; ++i) v[i] = parse_double(f[static_cast<std::size_t>(i)], "CSV line " + std::to_string(lineno));
    CsvRow r{v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], std::nullopt, v[10], v[11], v[12]};
    if (!std::isnan(v[9])) r.phi = v[9];
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw GeometryError(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_csv(ss.str());
}

CurveData curve_data_from_csv(const SurfaceDef& surface, std::span<const CsvRow> rows) {
  if (rows.size() < 5) throw GeometryError(ErrorKind::TooFewSamples, "CSV curve needs >= 5 rows");
  CurveData data;
  data.step = rows[1].s - rows[0].s;
  std::vector<Vec3> pos(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) pos[i] = Vec3(rows[i].x, rows[i].y, rows[i].z_pos);
  const std::vector<Vec3> dpos = numerics::uniform_derivative(std::span<const Vec3>(pos), data.step, 1);

  std::optional<Vec3> previous_e1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const CsvRow& r = rows[i];
    ShapeData sd = shape_data_at(surface, Vec2(r.t, r.z));
    CurveSample cs;
    cs.s = r.s;
    cs.uv = Vec2(r.t, r.z);
    cs.pos = pos[i];
    cs.normal = sd.normal;
    cs.kappa1 = sd.kappa1;
    cs.kappa2 = sd.kappa2;
    cs.kg = r.kg;
    cs.kn = r.kn;
    cs.taug = r.taug;
    cs.theta = r.theta;
    cs.kappa = r.kappa;
    cs.tau = r.tau;
    if (sd.umbilic || !r.phi) {
      data.umbilic_stations.push_back(i);
      cs.e1 = sd.e1;
      cs.tangent = dpos[i].normalized();
      previous_e1.reset();
    } else {
      const Vec3 default_e1 = sd.e1;
      if (previous_e1) align_principal_frame(sd, *previous_e1);
      cs.e1_flipped = sd.e1.dot(default_e1) < 0;
      previous_e1 = sd.e1;
      cs.e1 = sd.e1;
      cs.phi = r.phi;
      cs.tangent = std::cos(*r.phi) * sd.e1 + std::sin(*r.phi) * sd.e2;
    }
    data.samples.push_back(cs);
  }
  return data;
}

MeshGrid sample_mesh(const SurfaceDef& surface, int nt, int nz, bool parallel) {
  const auto pts = grid_points(surface.domain(), nt, nz);
  MeshGrid m;
  m.nt = nt;
  m.nz = nz;
  m.vertices = parallel ? sample_positions_parallel(surface, pts) : sample_positions_serial(surface, pts);
  return m;
}

std::string to_obj(const MeshGrid& mesh, std::span<const std::vector<Vec3>> curves,
                   std::span<const std::string> curve_names) {
  std::string out;
  auto vertex = [&out](const Vec3& p) {
    out += "v " + format_double(p.x()) + ' ' + format_double(p.y()) + ' ' + format_double(p.z()) + '\n';
  };
  out += "o surface\n";
  for (const Vec3& p : mesh.vertices) vertex(p);
  auto idx = [&](int i, int k) { return std::to_string(i * mesh.nz + k + 1); };
  for (int i = 0; i + 1 < mesh.nt; ++i) {
    for (int k = 0; k + 1 < mesh.nz; ++k) {
      out += "f " + idx(i, k) + ' ' + idx(i + 1, k) + ' ' + idx(i + 1, k + 1) + '\n';
      out += "f " + idx(i, k) + ' ' + idx(i + 1, k + 1) + ' ' + idx(i, k + 1) + '\n';
    }
  }
  std::size_t base = mesh.vertices.size();
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out += "o " + (c < curve_names.size() ? curve_names[c] : "curve_" + std::to_string(c)) + '\n';
    for (const Vec3& p : curves[c]) vertex(p);
    out += 'l';
    for (std::size_t i = 0; i < curves[c].size(); ++i) out += ' ' + std::to_string(base + i + 1);
    out += '\n';
    base += curves[c].size();
  }
  return out;
}

void write_obj(const std::filesystem::path& path, const MeshGrid& mesh, std::span<const std::vector<Vec3>> curves,
               std::span<const std::string> curve_names) {
  if (curves.empty()) throw GeometryError(ErrorKind::InvalidArgument, "OBJ export needs at least one curve");
  for (const auto& c : curves) {
    if (c.size() < 2) throw GeometryError(ErrorKind::InvalidArgument, "refusing to export an empty trace");
  }
  write_text_atomic(path, to_obj(mesh, curves, curve_names));
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config c;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw GeometryError(ErrorKind::Config, origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw GeometryError(ErrorKind::Config, origin + ":" + std::to_string(lineno) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw GeometryError(ErrorKind::Io, "cannot open config " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str(), path.string());
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_double(*v, key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  const double d = parse_double(*v, key);
  if (d != std::floor(d)) throw GeometryError(ErrorKind::Config, key + " must be an integer");
  return static_cast<int>(d);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

Vec2 Config::get_vec2(const std::string& key, const Vec2& fallback) const {
  const auto v = get(key);
  return v ? parse_vec2(*v, key) : fallback;
}

std::map<std::string, double> Config::numeric_section(const std::string& prefix) const {
  std::map<std::string, double> out;
  for (const auto& [k, v] : values_) {
    if (k.size() > prefix.size() && k.compare(0, prefix.size(), prefix) == 0) {
      out[k.substr(prefix.size())] = parse_double(v, k);
    }
  }
  return out;
}

}  // namespace curvegeo::io
