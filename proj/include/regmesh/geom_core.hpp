#pragma once

#include <span>
#include <vector>

#include "regmesh/errors.hpp"
#include "regmesh/types.hpp"

namespace regmesh {

/// Vertices closer to the centroid than this fraction of the element diameter
/// are rejected.
inline constexpr double kRejectionRadius = 1e-12;

/// Cyclic ratios r_i = |x_{i-1} - c| / |x_i - c|.
struct RadiusRatios {
  std::vector<double> values;

  double product() const;
  /// max_i |r_i - 1|
  double max_deviation() const;
};

/// Largest and smallest vertex-to-centroid distance of one iterate.
struct RadiusEnvelope {
  double max = 0.0;
  double min = 0.0;
};

template <int Dim>
struct TriangleIteration {
  Triangle<Dim> triangle;
  int iterations = 0;
  /// One entry per visited state, the input included.
  std::vector<RadiusRatios> ratio_history;
  std::vector<RadiusEnvelope> envelope_history;
};

template <int Dim>
class MaxIterExceeded : public Error {
 public:
  explicit MaxIterExceeded(TriangleIteration<Dim> last);
  const TriangleIteration<Dim>& last() const noexcept { return last_; }

 private:
  TriangleIteration<Dim> last_;
};

template <int Dim>
Point<Dim> centroid(std::span<const Point<Dim>> vertices);

template <int Dim>
Point<Dim> centroid(const Triangle<Dim>& t) {
  return centroid<Dim>(std::span<const Point<Dim>>(t));
}

/// Largest pairwise vertex distance.
template <int Dim>
double diameter(std::span<const Point<Dim>> vertices);

/// Throws NearCentroidVertex when a vertex is within kRejectionRadius * diameter
/// of the centroid.
template <int Dim>
RadiusRatios radius_ratios(std::span<const Point<Dim>> vertices);

template <int Dim>
RadiusRatios radius_ratios(const Triangle<Dim>& t) {
  return radius_ratios<Dim>(std::span<const Point<Dim>>(t));
}

template <int Dim>
RadiusEnvelope radius_envelope(const Triangle<Dim>& t);

/// One application of the geometric element transformation. Each vertex is
/// rescaled about the centroid to the radius of its predecessor, then the
/// centroid is moved back:
///
///   x_i' = 2/3 r_i (x_i - c) - 1/3 r_{i+1} (x_{i+1} - c) - 1/3 r_{i-1} (x_{i-1} - c) + c
///
/// Works verbatim for triangles embedded in 3D.
template <int Dim>
Triangle<Dim> transform_triangle(const Triangle<Dim>& t);

/// Repeats transform_triangle until max_i |r_i - 1| < tol. Throws
/// MaxIterExceeded<Dim> carrying the last state when max_iter transforms were
/// not enough.
template <int Dim>
TriangleIteration<Dim> iterate_triangle(const Triangle<Dim>& t, double tol, int max_iter);

/// k-gon generalisation, k = polygon.size() >= 3. The input is first moved so
/// its centroid is the origin; the output keeps the centroid there:
///
///   x_i' = (k-1)/k r_i x_i - 1/k sum_{j != i} r_j x_j
///
/// Expects a convex polygon; convexity is not checked.
Polygon transform_polygon(std::span<const Point2> polygon);

}  // namespace regmesh
