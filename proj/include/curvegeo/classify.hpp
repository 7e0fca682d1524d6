#pragma once

#include <optional>
#include <span>
#include <vector>

#include "curvegeo/darboux.hpp"
#include "curvegeo/surface.hpp"
#include "curvegeo/tracer.hpp"

namespace curvegeo {

struct ConstancyVerdict {
  bool is_constant = false;
  double mean = 0;
  double max_dev = 0;
  double tolerance_used = 0;
};

/// Total-least-squares fit a x + b y = 0 with a^2 + b^2 = 1, a >= 0
/// (b > 0 when a = 0).
struct DependenceVerdict {
  bool dependent = false;
  Vec2 coeffs = Vec2(1, 0);
  double residual = 0;      // smallest / largest singular value
  bool degenerate = false;  // both series numerically zero
};

/// Generalized-helix fit m kappa + n tau = 0 with axis V = cos(psi) T + sin(psi) B,
/// (cos(psi), sin(psi)) = (m, n).
struct HelixReport {
  bool is_helix = false;
  bool fitted = false;  // false when curvature vanishes somewhere on the curve
  DependenceVerdict dependence;
  Vec2 mn = Vec2(1, 0);
  double psi = 0;
  Vec3 axis = Vec3::UnitZ();
  ConstancyVerdict axis_dot_t;
  ConstancyVerdict axis_dot_n;
};

struct ClassifyOptions {
  double abs_tol = 1e-6;  // constancy tests on phi, theta, <V,N>, kappa1 - kappa2
  double rel_tol = 1e-6;
  double flag_tol = 1e-6;  // line of curvature / asymptotic / planar / geodesic, times (1 + max kappa)
  double dependence_threshold = 1e-4;
  double helix_axis_tol = 1e-5;  // constancy of <V, T>
  double gray_factor = 10;       // statistics within this factor of a threshold are flagged
};

/// Verdicts whose statistic lies within gray_factor of the threshold are
/// reported here; biconditional checks skip curves carrying any flag.
struct GrayZone {
  bool line_of_curvature = false;
  bool asymptotic = false;
  bool planar = false;
  bool geodesic = false;
  bool pseudo_geodesic = false;
  bool helix = false;
  bool kntg = false;
  bool crpc = false;
  bool axis_dot_n = false;

  bool any() const {
    return line_of_curvature || asymptotic || planar || geodesic || pseudo_geodesic || helix || kntg || crpc ||
           axis_dot_n;
  }
};

struct ClassificationReport {
  std::optional<ConstancyVerdict> isogonal;  // empty when the curve meets an umbilic
  ConstancyVerdict pseudo_geodesic;          // on theta
  bool geodesic = false;
  bool line_of_curvature = false;
  bool asymptotic = false;
  bool planar = false;
  double kappa_scale = 1;  // 1 + max kappa
  double max_abs_kg = 0, max_abs_kn = 0, max_abs_taug = 0, max_abs_tau = 0;
  double max_abs_theta = 0;
  HelixReport helix;
  DependenceVerdict crpc_along;  // (kappa1, kappa2)
  DependenceVerdict kntg_dep;    // (kn, taug)
  ConstancyVerdict cskc_along;   // kappa1 - kappa2
  ConstancyVerdict taug_along;
  GrayZone gray;
};

/// tolerance_used = abs_tol + rel_tol |mean|. Throws TooFewSamples below five values.
ConstancyVerdict constancy_test(std::span<const double> values, double abs_tol, double rel_tol);

/// Throws TooFewSamples below `min_samples` pairs.
DependenceVerdict linear_dependence_test(std::span<const double> x, std::span<const double> y,
                                         double threshold = 1e-4, std::size_t min_samples = 5);

/// Axis fit from Darboux samples (B from the Darboux frame, no differencing).
/// Throws VanishingCurvature when kappa <= 1e-6 somewhere.
HelixReport helix_axis(std::span<const CurveSample> samples, const DependenceVerdict& dependence,
                       const ClassifyOptions& options = {});

/// Classification of an already-scalarized curve (at least nine samples).
ClassificationReport classify_samples(const CurveData& data, const ClassifyOptions& options = {});

ClassificationReport classify_curve(const SurfaceDef& surface, const Trace& trace,
                                    const ClassifyOptions& options = {});

struct SurfaceProbe {
  DependenceVerdict crpc;
  ConstancyVerdict cskc;
  std::size_t points = 0;
  std::size_t umbilic_points = 0;
};

/// CRPC and CSkC tests over an nt x nz grid strictly inside the domain
/// (at least 25 points). All-umbilic surfaces report a degenerate CRPC fit.
SurfaceProbe surface_class_probe(const SurfaceDef& surface, int nt = 12, int nz = 12,
                                 const ClassifyOptions& options = {});

}  // namespace curvegeo
