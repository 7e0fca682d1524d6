#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "curvegeo/types.hpp"

namespace curvegeo {

/// Position and first/second parameter derivatives of X(t,z) at one point.
struct SurfaceJet2 {
  Vec3 position = Vec3::Zero();
  Vec3 d_t = Vec3::Zero();
  Vec3 d_z = Vec3::Zero();
  Vec3 d_tt = Vec3::Zero();
  Vec3 d_tz = Vec3::Zero();
  Vec3 d_zz = Vec3::Zero();
};

struct FundamentalForms {
  double E = 0, F = 0, G = 0;
  double e = 0, f = 0, g = 0;
};

/// Christoffel symbols of the second kind, gamma_k_ij = Γ^k_ij.
struct Christoffel {
  double g1_11 = 0, g1_12 = 0, g1_22 = 0;
  double g2_11 = 0, g2_12 = 0, g2_22 = 0;
};

/// Pointwise shape data. kappa1 <= kappa2, {e1, e2, normal} right-handed.
/// X_t = f1 e1 + f2 e2 and X_z = g1 e1 + g2 e2.
struct ShapeData {
  Vec3 normal = Vec3::UnitZ();
  double kappa1 = 0, kappa2 = 0;
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
  double gaussian = 0, mean = 0;
  Christoffel christoffel;
  double f1 = 0, f2 = 0, g1 = 0, g2 = 0;
  // When set, e1/e2 are an arbitrary orthonormal tangent pair.
  bool umbilic = false;
};

struct Domain {
  double t_min = 0, t_max = 0, z_min = 0, z_max = 0;

  bool contains(const Vec2& p) const {
    return p.x() >= t_min && p.x() <= t_max && p.y() >= z_min && p.y() <= z_max;
  }
};

enum class JetSource { Analytic, FiniteDifference };

using JetFunction = std::function<SurfaceJet2(double t, double z)>;
using PositionFunction = std::function<Vec3(double t, double z)>;

/// Immutable description of a parametrized surface patch. Safe to share
/// between threads; evaluation holds no state.
class SurfaceDef {
 public:
  /// Surface with an analytic jet.
  SurfaceDef(std::string id, Domain domain, JetFunction jet, bool orthogonal,
             std::map<std::string, double> parameters = {});

  /// Surface given only by its position map; jets come from central
  /// differences.
  static SurfaceDef from_position(std::string id, Domain domain, PositionFunction position,
                                  bool orthogonal,
                                  std::map<std::string, double> parameters = {});

  const std::string& id() const { return id_; }
  const Domain& domain() const { return domain_; }
  JetSource jet_source() const { return source_; }
  bool orthogonal() const { return orthogonal_; }
  const std::map<std::string, double>& parameters() const { return parameters_; }
  double parameter(const std::string& name) const;

  /// Same surface restricted (or extended) to another parameter rectangle.
  SurfaceDef with_domain(Domain domain) const;

  /// Raw evaluation without the domain check.
  SurfaceJet2 evaluate(double t, double z) const;
  Vec3 position(double t, double z) const;

 private:
  std::string id_;
  Domain domain_;
  JetSource source_ = JetSource::Analytic;
  bool orthogonal_ = false;
  std::map<std::string, double> parameters_;
  JetFunction jet_;
  PositionFunction position_;
};

/// Throws OutOfDomain outside the domain and SingularJet when
/// |X_t x X_z| < 1e-14 |X_t||X_z|.
SurfaceJet2 jet2(const SurfaceDef& surface, const Vec2& p);

/// Central-difference jet of a position map, step 1e-5 * max(1,|t|,|z|).
SurfaceJet2 finite_difference_jet(const PositionFunction& position, double t, double z);

FundamentalForms fundamental_forms(const SurfaceJet2& j);

Vec3 unit_normal(const SurfaceJet2& j);

/// Scale-relative umbilic threshold.
inline double umbilic_threshold(double kappa1, double kappa2) {
  return 1e-9 * std::max(1.0, std::abs(kappa1) + std::abs(kappa2));
}

/// Shape-operator eigenproblem, Christoffel symbols and the principal
/// decomposition of the coordinate tangents. E1 is signed so that
/// <E1, X_t> >= 0 (falling back to <E1, X_z> >= 0 when E1 is orthogonal
/// to X_t).
ShapeData shape_data(const SurfaceJet2& j, const FundamentalForms& forms);

/// Convenience: jet2 + fundamental_forms + shape_data.
ShapeData shape_data_at(const SurfaceDef& surface, const Vec2& p);

/// Flip E1 (and E2 = N x E1 with it) so that <E1, reference> >= 0.
void align_principal_frame(ShapeData& sd, const Vec3& reference);

}  // namespace curvegeo
