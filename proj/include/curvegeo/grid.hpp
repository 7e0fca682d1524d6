#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvegeo/surface.hpp"
#include "curvegeo/tracer.hpp"

namespace curvegeo {

/// nt x nz lattice over the domain, t varying slowest. `inset` shrinks the
/// rectangle by that fraction of its width on every side.
std::vector<Vec2> grid_points(const Domain& domain, int nt, int nz, double inset = 0.0);

// Serial kernels are the reference; the parallel ones must agree bit for bit.
std::vector<ShapeData> sample_shape_serial(const SurfaceDef& surface, std::span<const Vec2> points);
std::vector<ShapeData> sample_shape_parallel(const SurfaceDef& surface, std::span<const Vec2> points);

std::vector<Vec3> sample_positions_serial(const SurfaceDef& surface, std::span<const Vec2> points);
std::vector<Vec3> sample_positions_parallel(const SurfaceDef& surface, std::span<const Vec2> points);

/// Per-request outcome: the trace, or the error message it raised.
struct BatchEntry {
  std::optional<Trace> trace;
  std::string error;
};

std::vector<BatchEntry> trace_batch_serial(std::span<const TraceRequest> requests);
std::vector<BatchEntry> trace_batch_parallel(std::span<const TraceRequest> requests);

}  // namespace curvegeo
