#include <benchmark/benchmark.h>

#include "curvegeo/gallery.hpp"
#include "curvegeo/grid.hpp"

#include <map>

using namespace curvegeo;

namespace {

const std::vector<Vec2>& enneper_grid(int n) {
  static std::map<int, std::vector<Vec2>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, grid_points(make_enneper().surface.domain(), n, n, 0.01)).first;
  return it->second;
}

std::vector<TraceRequest> batch(int n) {
  const GallerySurface en = make_enneper();
  std::vector<TraceRequest> reqs;
  for (int k = 0; k < n; ++k) {
    const double a = -1.2 + 2.4 * k / n;
    reqs.push_back(TraceRequest{en.surface, Vec2(0.3 * std::cos(a), 0.3 * std::sin(a)), IsogonalMode{a, 1.0}, -1, 1,
                                0.01, {}});
  }
  return reqs;
}

void BM_ShapeSerial(benchmark::State& state) {
  const SurfaceDef s = make_enneper().surface;
  const auto& pts = enneper_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_shape_serial(s, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

void BM_ShapeParallel(benchmark::State& state) {
  const SurfaceDef s = make_enneper().surface;
  const auto& pts = enneper_grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sample_shape_parallel(s, pts));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

void BM_TraceBatchSerial(benchmark::State& state) {
  const auto reqs = batch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_batch_serial(reqs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TraceBatchParallel(benchmark::State& state) {
  const auto reqs = batch(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_batch_parallel(reqs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ShapeSerial)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ShapeParallel)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceBatchSerial)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceBatchParallel)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
