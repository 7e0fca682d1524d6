#pragma once

#include <functional>
#include <span>
#include <vector>

#include "curvegeo/types.hpp"

namespace curvegeo::numerics {

/// Finite-difference weights for the `order`-th derivative at x0 over
/// arbitrary nodes (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

/// Derivative of order 1..3 of a series sampled on a uniform grid of
/// spacing h, fourth-order accurate at every sample: symmetric stencils in
/// the interior, off-centre stencils of the same order near the ends.
/// Requires at least order + 4 samples.
std::vector<double> uniform_derivative(std::span<const double> values, double h, int order = 1);
std::vector<Vec3> uniform_derivative(std::span<const Vec3> values, double h, int order = 1);

/// Continuous lift of an angle series (removes 2*pi jumps).
std::vector<double> unwrap(std::span<const double> angles);

/// Wrap into (-pi, pi].
double wrap_angle(double a);

/// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double abs_tol,
                        int max_depth = 50);

}  // namespace curvegeo::numerics
