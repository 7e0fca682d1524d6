#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvegeo/darboux.hpp"
#include "curvegeo/surface.hpp"

namespace curvegeo::io {

inline constexpr const char* kCsvHeader = "s,t,z,x,y,z_pos,kg,kn,taug,phi,theta,kappa,tau";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// One CSV data line without the terminating LF; undefined phi prints "nan".
std::string csv_row(const CurveSample& s);

std::string to_csv(const CurveData& data);

/// Writes through a temporary file and renames it, so a failure leaves no
/// partial output. Throws Io, and InvalidArgument for an empty curve.
void write_csv(const std::filesystem::path& path, const CurveData& data);

struct CsvRow {
  double s = 0, t = 0, z = 0, x = 0, y = 0, z_pos = 0;
  double kg = 0, kn = 0, taug = 0;
  std::optional<double> phi;
  double theta = 0, kappa = 0, tau = 0;
};

std::vector<CsvRow> parse_csv(const std::string& text);
std::vector<CsvRow> read_csv(const std::filesystem::path& path);

/// Rebuild curve data from CSV rows on `surface`: scalars come from the
/// file, the Gauss map and principal frame are re-evaluated at (t, z), and
/// the tangent is cos(phi) E1 + sin(phi) E2 (position differences where phi
/// is undefined).
CurveData curve_data_from_csv(const SurfaceDef& surface, std::span<const CsvRow> rows);

struct MeshGrid {
  int nt = 0, nz = 0;
  std::vector<Vec3> vertices;  // t slowest, as from grid_points
};

/// Surface sampled on an nt x nz lattice over its domain.
MeshGrid sample_mesh(const SurfaceDef& surface, int nt, int nz, bool parallel = true);

/// OBJ text: the mesh as object "surface" with two triangles per quad, then
/// each curve as a polyline object, vertices in that order.
std::string to_obj(const MeshGrid& mesh, std::span<const std::vector<Vec3>> curves,
                   std::span<const std::string> curve_names = {});

void write_obj(const std::filesystem::path& path, const MeshGrid& mesh, std::span<const std::vector<Vec3>> curves,
               std::span<const std::string> curve_names = {});

/// Atomic text write (temporary sibling file, then rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Flat `key = value` configuration with `#` comments.
class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text, const std::string& origin = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  Vec2 get_vec2(const std::string& key, const Vec2& fallback) const;
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  /// Entries whose key starts with `prefix`, prefix stripped, parsed as numbers.
  std::map<std::string, double> numeric_section(const std::string& prefix) const;
  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& what);
Vec2 parse_vec2(const std::string& text, const std::string& what);

}  // namespace curvegeo::io
