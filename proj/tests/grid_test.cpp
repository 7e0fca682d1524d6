#include <doctest.h>

#include "curvegeo/gallery.hpp"
#include "curvegeo/grid.hpp"
#include "test_util.hpp"

using namespace curvegeo;

TEST_CASE("grid points cover the inset domain with t slowest") {
  const Domain d{0, 1, -2, 2};
  const std::vector<Vec2> g = grid_points(d, 3, 5);
  REQUIRE(g.size() == 15);
  CHECK(g.front() == Vec2(0, -2));
  CHECK(g.back() == Vec2(1, 2));
  CHECK(g[1] == Vec2(0, -1));
  CHECK(g[5] == Vec2(0.5, -2));
  const std::vector<Vec2> inset = grid_points(d, 3, 3, 0.1);
  CHECK(testutil::near(inset.front().x(), 0.1, 1e-15));
  CHECK(testutil::near(inset.back().y(), 1.6, 1e-15));
}

TEST_CASE("parallel shape sampling equals the serial reference bit for bit") {
  for (const GallerySurface& g : {make_enneper(), make_crpc_revolution(2.0, 1), make_bonnet(0.5)}) {
    const std::vector<Vec2> pts = grid_points(g.surface.domain(), 20, 20, 0.02);
    const std::vector<ShapeData> a = sample_shape_serial(g.surface, pts);
    const std::vector<ShapeData> b = sample_shape_parallel(g.surface, pts);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].kappa1 == b[i].kappa1);
      CHECK(a[i].kappa2 == b[i].kappa2);
      CHECK(a[i].e1 == b[i].e1);
      CHECK(a[i].normal == b[i].normal);
    }
    CHECK(sample_positions_serial(g.surface, pts) == sample_positions_parallel(g.surface, pts));
  }
}

TEST_CASE("parallel batch traces equal the serial reference") {
  const GallerySurface en = make_enneper();
  std::vector<TraceRequest> reqs;
  for (int k = 0; k < 12; ++k) {
    reqs.push_back(TraceRequest{en.surface, Vec2(0.1 * k - 0.5, 0.3), IsogonalMode{0.2 * k - 1.0, 1.0}, -1, 1, 0.02, {}});
  }
  reqs.push_back(TraceRequest{make_sphere(1.0), Vec2(0, 0), IsogonalMode{0.3, 1.0}, -1, 1, 0.02, {}});
  const std::vector<BatchEntry> a = trace_batch_serial(reqs), b = trace_batch_parallel(reqs);
  REQUIRE(a.size() == reqs.size());
  REQUIRE(b.size() == reqs.size());
  for (std::size_t i = 0; i + 1 < reqs.size(); ++i) {
    REQUIRE(a[i].trace);
    REQUIRE(b[i].trace);
    REQUIRE(a[i].trace->stations.size() == b[i].trace->stations.size());
    for (std::size_t k = 0; k < a[i].trace->stations.size(); ++k) {
      CHECK(a[i].trace->stations[k].uv == b[i].trace->stations[k].uv);
    }
  }
  // the umbilic start fails in both without aborting the batch
  CHECK(!a.back().trace);
  CHECK(!b.back().trace);
  CHECK(a.back().error == b.back().error);
}
