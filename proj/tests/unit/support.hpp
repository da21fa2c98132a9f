#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "regmesh/dynamics.hpp"
#include "regmesh/mesh.hpp"
#include "regmesh/random.hpp"

namespace testing {

using namespace regmesh;

inline double max_abs_diff(std::span<const Point2> a, std::span<const Point2> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return d;
}

inline std::vector<Point2> points2(std::span<const double> flat) {
  std::vector<Point2> out;
  for (std::size_t i = 0; i + 1 < flat.size(); i += 2) out.emplace_back(flat[i], flat[i + 1]);
  return out;
}

inline std::vector<Point3> points3(std::span<const double> flat) {
  std::vector<Point3> out;
  for (std::size_t i = 0; i + 2 < flat.size(); i += 3) out.emplace_back(flat[i], flat[i + 1], flat[i + 2]);
  return out;
}

inline double signed_area(const Triangle<2>& t) {
  const Point2 a = t[1] - t[0], b = t[2] - t[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

/// Counter-clockwise triangle in the unit square with edge ratio >= min_q.
inline Triangle<2> random_triangle(Rng& rng, double min_q) {
  for (;;) {
    Triangle<2> t;
    for (auto& p : t) p = Point2(rng.unit(), rng.unit());
    if (signed_area(t) < 0.0) std::swap(t[1], t[2]);
    if (edge_ratio(t) >= min_q && signed_area(t) > 1e-6) return t;
  }
}

inline Similarity random_similarity(Rng& rng) {
  Similarity g;
  g.angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
  g.scale = rng.uniform(0.2, 5.0);
  g.translation = Point2(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
  return g;
}

/// The non-convex fan whose centre crosses an edge after one fixed-boundary step.
inline TriMesh inverting_fan() {
  std::vector<Point2> pts = {Point2(0.1, -0.2), Point2(0.0, 0.4), Point2(-1.8, -0.1), Point2(-0.5, -0.2),
                             Point2(0.2, -0.3)};
  std::vector<Cell<2>> cells = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1}};
  return TriMesh::build(std::move(pts), std::move(cells));
}

}  // namespace testing
