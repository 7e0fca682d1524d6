#include "curvegeo/grid.hpp"

#include <exception>

#include "curvegeo/errors.hpp"

namespace curvegeo {

namespace {

BatchEntry run_one(const TraceRequest& req) {
  BatchEntry e;
  try {
    e.trace = trace(req);
  } catch (const std::exception& ex) {
    e.error = ex.what();
  }
  return e;
}

}  // namespace

std::vector<Vec2> grid_points(const Domain& d, int nt, int nz, double inset) {
  if (nt < 2 || nz < 2) throw GeometryError(ErrorKind::InvalidArgument, "grid needs at least 2 x 2 points");
  const double wt = d.t_max - d.t_min, wz = d.z_max - d.z_min;
  const double t0 = d.t_min + inset * wt, t1 = d.t_max - inset * wt;
  const double z0 = d.z_min + inset * wz, z1 = d.z_max - inset * wz;
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(nt) * nz);
  for (int i = 0; i < nt; ++i) {
    for (int k = 0; k < nz; ++k) {
      out.emplace_back(t0 + (t1 - t0) * i / (nt - 1), z0 + (z1 - z0) * k / (nz - 1));
    }
  }
  return out;
}

std::vector<ShapeData> sample_shape_serial(const SurfaceDef& surface, std::span<const Vec2> points) {
  std::vector<ShapeData> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = shape_data_at(surface, points[i]);
  return out;
}

std::vector<ShapeData> sample_shape_parallel(const SurfaceDef& surface, std::span<const Vec2> points) {
  std::vector<ShapeData> out(points.size());
  std::exception_ptr failure;
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = shape_data_at(surface, points[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(curvegeo_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<Vec3> sample_positions_serial(const SurfaceDef& surface, std::span<const Vec2> points) {
  std::vector<Vec3> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = surface.position(points[i].x(), points[i].y());
  return out;
}

std::vector<Vec3> sample_positions_parallel(const SurfaceDef& surface, std::span<const Vec2> points) {
  std::vector<Vec3> out(points.size());
  const long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const Vec2& p = points[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = surface.position(p.x(), p.y());
  }
  return out;
}

std::vector<BatchEntry> trace_batch_serial(std::span<const TraceRequest> requests) {
  std::vector<BatchEntry> out;
  out.reserve(requests.size());
  for (const TraceRequest& r : requests) out.push_back(run_one(r));
  return out;
}

std::vector<BatchEntry> trace_batch_parallel(std::span<const TraceRequest> requests) {
  std::vector<BatchEntry> out(requests.size());
  const long n = static_cast<long>(requests.size());
  // Traces differ widely in cost, so hand them out one at a time.
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_one(requests[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace curvegeo
