#include "regmesh/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "regmesh/errors.hpp"
#include "regmesh/random.hpp"

namespace regmesh {

namespace {

void check_lattice_args(const char* who, int n, double jitter) {
  if (n < 2) throw InvalidArgument(fmt::format("{}: n must be >= 2, got {}", who, n));
  if (!(jitter >= 0.0 && jitter < 0.5)) {
    throw InvalidArgument(fmt::format("{}: jitter must lie in [0, 0.5), got {}", who, jitter));
  }
}

}  // namespace

TriMesh gen_simple_mesh(int n) {
  if (n < 4) throw TooFewSymbols(n);
  const int rim = n - 1;
  std::vector<Point2> pts;
  pts.emplace_back(0.0, 0.0);
  for (int k = 2; k <= n; ++k) {
    const double a = 2.0 * k * std::numbers::pi / rim;
    pts.emplace_back(std::cos(a), std::sin(a));
  }
  std::vector<Cell<2>> cells;
  for (int k = 1; k <= rim; ++k) cells.push_back({0, k, k % rim + 1});
  return TriMesh::build(std::move(pts), std::move(cells));
}

TriMesh gen_grid_mesh(int n, double jitter, std::uint64_t seed) {
  check_lattice_args("gen_grid_mesh", n, jitter);
  Rng rng(seed);
  const double h = 1.0 / n;
  const double amp = jitter * h;
  auto id = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };

  std::vector<Point2> pts;
  pts.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      Point2 p(i * h, j * h);
      if (i == n) p.x() = 1.0;
      if (j == n) p.y() = 1.0;
      const bool interior = i > 0 && i < n && j > 0 && j < n;
      if (interior && amp > 0.0) {
        p.x() += rng.uniform(-amp, amp);
        p.y() += rng.uniform(-amp, amp);
      }
      pts.push_back(p);
    }
  }
  std::vector<Cell<2>> cells;
  cells.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      cells.push_back({a, b, c});
      cells.push_back({a, c, d});
    }
  }
  return TriMesh::build(std::move(pts), std::move(cells));
}

TetMesh gen_cube_tet_mesh(int n, double jitter, std::uint64_t seed) {
  check_lattice_args("gen_cube_tet_mesh", n, jitter);
  Rng rng(seed);
  const double h = 1.0 / n;
  const double amp = jitter * h;
  auto id = [n](int i, int j, int k) { return static_cast<Index>((k * (n + 1) + j) * (n + 1) + i); };

  std::vector<Point3> pts;
  pts.reserve((n + 1) * (n + 1) * (n + 1));
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= n; ++i) {
        Point3 p(i == n ? 1.0 : i * h, j == n ? 1.0 : j * h, k == n ? 1.0 : k * h);
        const bool interior = i > 0 && i < n && j > 0 && j < n && k > 0 && k < n;
        if (interior && amp > 0.0) {
          for (int d = 0; d < 3; ++d) p[d] += rng.uniform(-amp, amp);
        }
        pts.push_back(p);
      }
    }
  }

  // Each permutation of the axes gives one monotone path from corner (0,0,0)
  // to (1,1,1) of the cube; odd permutations are negatively oriented.
  constexpr std::array<std::array<int, 3>, 6> kPaths = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  constexpr std::array<bool, 6> kOdd = {false, true, true, false, false, true};

  std::vector<Cell<3>> cells;
  cells.reserve(6 * n * n * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < kPaths.size(); ++p) {
          std::array<int, 3> cur = {i, j, k};
          Cell<3> tet;
          tet[0] = id(cur[0], cur[1], cur[2]);
          for (int s = 0; s < 3; ++s) {
            ++cur[kPaths[p][s]];
            tet[s + 1] = id(cur[0], cur[1], cur[2]);
          }
          if (kOdd[p]) std::swap(tet[2], tet[3]);
          cells.push_back(tet);
        }
      }
    }
  }
  return TetMesh::build(std::move(pts), std::move(cells));
}

TriMesh gen_hex_patch(int rings) {
  if (rings < 1) throw InvalidArgument(fmt::format("gen_hex_patch: rings must be >= 1, got {}", rings));
  const Point2 a(1.0, 0.0);
  const Point2 b(0.5, std::sqrt(3.0) / 2.0);
  std::map<std::pair<int, int>, Index> ids;
  std::vector<Point2> pts;
  for (int i = -rings; i <= rings; ++i) {
    for (int j = -rings; j <= rings; ++j) {
      if (std::abs(i + j) > rings) continue;
      ids[{i, j}] = static_cast<Index>(pts.size());
      pts.push_back(i * a + j * b);
    }
  }
  std::vector<Cell<2>> cells;
  for (const auto& [ij, v] : ids) {
    const auto [i, j] = ij;
    auto right = ids.find({i + 1, j});
    if (right == ids.end()) continue;
    if (auto up = ids.find({i, j + 1}); up != ids.end()) cells.push_back({v, right->second, up->second});
    if (auto down = ids.find({i + 1, j - 1}); down != ids.end()) {
      cells.push_back({v, down->second, right->second});
    }
  }
  return TriMesh::build(std::move(pts), std::move(cells));
}

TetMesh gen_regular_bipyramid() {
  const double s3 = std::sqrt(3.0);
  const double apex = std::sqrt(2.0 / 3.0);
  std::vector<Point3> pts = {
      Point3(0.0, 0.0, 0.0),
      Point3(1.0, 0.0, 0.0),
      Point3(0.5, s3 / 2.0, 0.0),
      Point3(0.5, s3 / 6.0, apex),
      Point3(0.5, s3 / 6.0, -apex),
  };
  std::vector<Cell<3>> cells = {{0, 1, 2, 3}, {0, 2, 1, 4}};
  return TetMesh::build(std::move(pts), std::move(cells));
}

}  // namespace regmesh
