#include <cmath>

#include <Eigen/Geometry>
#include <doctest.h>

#include "oracle_values.hpp"
#include "regmesh/generators.hpp"
#include "regmesh/quality.hpp"
#include "support.hpp"

using namespace regmesh;

TEST_CASE("tri_quality") {
  CHECK(tri_quality(Triangle<2>{Point2(0, 0), Point2(2, 0), Point2(1, std::sqrt(3.0))}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tri_quality(Triangle<2>{Point2(0, 0), Point2(1, 0), Point2(0, 1)}) == std::sqrt(0.5));
  // edges 4, sqrt(1.25), sqrt(9.25)
  CHECK(tri_quality(Triangle<2>{Point2(0, 0), Point2(4, 0), Point2(1, 0.5)}) ==
        doctest::Approx(std::sqrt(1.25) / 4.0).epsilon(1e-15));
  CHECK(tri_quality(Triangle<3>{Point3(0, 0, 0), Point3(1, 0, 0), Point3(0, 0, 1)}) == std::sqrt(0.5));
  CHECK_THROWS_AS(tri_quality(Triangle<2>{Point2(1, 1), Point2(1, 1), Point2(1, 1)}), DegenerateElement);
}

TEST_CASE("tet_mean_ratio") {
  const double s3 = std::sqrt(3.0);
  const Tetrahedron regular = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(0.5, s3 / 2, 0),
                               Point3(0.5, s3 / 6, std::sqrt(2.0 / 3.0))};
  CHECK(tet_mean_ratio(regular) == doctest::Approx(1.0).epsilon(1e-14));

  const Tetrahedron corner = {Point3(0, 0, 0), Point3(1, 0, 0), Point3(0, 1, 0), Point3(0, 0, 1)};
  CHECK(std::abs(tet_mean_ratio(corner) - oracle::kCornerTetMeanRatio) < 1e-15);

  const auto displaced = testing::points3(oracle::kTetDisplaced);
  CHECK(std::abs(tet_mean_ratio({displaced[0], displaced[1], displaced[2], displaced[3]}) -
                 oracle::kTetDisplacedMeanRatio) < 1e-15);

  SUBCASE("scale and rigid-motion invariant") {
    Rng rng(17);
    for (int n = 0; n < 200; ++n) {
      Tetrahedron t;
      for (auto& p : t) p = Point3(rng.unit(), rng.unit(), rng.unit());
      const Point3 a = t[1] - t[0], b = t[2] - t[0], c = t[3] - t[0];
      if (a.dot(b.cross(c)) <= 1e-4) continue;
      const double q = tet_mean_ratio(t);
      CHECK(q > 0.0);
      CHECK(q <= 1.0 + 1e-15);
      const double lambda = rng.uniform(1e-3, 1e3);
      Tetrahedron s = t;
      for (auto& p : s) p = lambda * p + Point3(3, -1, 2);
      CHECK(std::abs(tet_mean_ratio(s) - q) < 1e-12);
      // an even permutation keeps the orientation and the value
      CHECK(std::abs(tet_mean_ratio({t[1], t[2], t[0], t[3]}) - q) < 1e-12);
    }
  }
  SUBCASE("inverted or flat") {
    CHECK_THROWS_AS(tet_mean_ratio({corner[0], corner[2], corner[1], corner[3]}), DegenerateElement);
    CHECK_THROWS_AS(tet_mean_ratio({corner[0], corner[1], corner[2], Point3(0.3, 0.3, 0)}), DegenerateElement);
  }
}

TEST_CASE("mesh_quality") {
  SUBCASE("equilateral patch") {
    const auto q = mesh_quality(gen_hex_patch(2));
    CHECK(q.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.min == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(q.counts.back() == 24);
  }
  SUBCASE("unjittered grid is all right isosceles") {
    // exact when the lattice spacing is a power of two; otherwise rounding of
    // i / n leaves a few ulp
    for (int n : {2, 4, 16, 64}) {
      const auto q = mesh_quality(gen_grid_mesh(n, 0.0, 0));
      CHECK(q.mean == std::sqrt(0.5));
      CHECK(q.min == std::sqrt(0.5));
    }
    for (int n : {3, 5, 10, 19}) {
      const auto q = mesh_quality(gen_grid_mesh(n, 0.0, 0));
      CHECK(std::abs(q.mean - std::sqrt(0.5)) < 1e-15);
      CHECK(std::abs(q.min - std::sqrt(0.5)) < 1e-15);
    }
  }
  SUBCASE("histogram layout") {
    const auto m = gen_grid_mesh(16, 0.3, 42);
    const auto q = mesh_quality(m, 10);
    REQUIRE(q.bin_edges.size() == 11);
    REQUIRE(q.counts.size() == 10);
    CHECK(q.bin_edges.front() == 0.0);
    CHECK(q.bin_edges.back() == 1.0);
    std::size_t total = 0;
    for (auto c : q.counts) total += c;
    CHECK(total == m.cell_count());
    REQUIRE(q.per_cell.size() == m.cell_count());
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
      const double v = q.per_cell[c];
      const auto bin = static_cast<std::size_t>(std::ceil(v * 10.0)) - 1;
      CHECK(v > q.bin_edges[bin]);
      CHECK(v <= q.bin_edges[bin + 1]);
    }
    const auto s = mean_min_quality(m);
    CHECK(s.mean == q.mean);
    CHECK(s.min == q.min);
    CHECK_THROWS_AS(mesh_quality(m, 0), InvalidArgument);
  }
  SUBCASE("cube golden run") {
    const auto q = mesh_quality(gen_cube_tet_mesh(8, 0.25, 7));
    CHECK(q.mean == doctest::Approx(0.71311076445820065).epsilon(1e-13));
  }
  SUBCASE("inverted tet scores zero without throwing in the sampler") {
    const auto m = gen_cube_tet_mesh(2, 0.0, 0);
    auto pts = m.vertices();
    pts[13] = Point3(2.0, 2.0, 2.0);  // centre vertex thrown outside
    const auto bad = m.with_vertices(pts);
    CHECK_THROWS_AS(mesh_quality(bad), DegenerateElement);
    const auto s = mean_min_quality(bad);
    CHECK(s.min == 0.0);
  }
}
