#include "regmesh/geom_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace regmesh {

namespace {

// x_i' = anchor + s_i - mean(s). With s_i = r_i (x_i - c) this equals the
// (k-1)/k, -1/k combination of the element transformation.
template <int Dim>
void regularize(std::span<const Point<Dim>> x, const Point<Dim>& anchor,
                std::span<Point<Dim>> out) {
  const Point<Dim> c = centroid<Dim>(x);
  const RadiusRatios ratios = radius_ratios<Dim>(x);
  std::vector<Point<Dim>> s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) s[i] = ratios.values[i] * (x[i] - c);
  Point<Dim> mean = Point<Dim>::Zero();
  for (const auto& v : s) mean += v;
  mean /= static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = anchor + (s[i] - mean);
}

}  // namespace

double RadiusRatios::product() const {
  double p = 1.0;
  for (double r : values) p *= r;
  return p;
}

double RadiusRatios::max_deviation() const {
  double d = 0.0;
  for (double r : values) d = std::max(d, std::abs(r - 1.0));
  return d;
}

template <int Dim>
MaxIterExceeded<Dim>::MaxIterExceeded(TriangleIteration<Dim> last)
    : Error(fmt::format("no convergence after {} iterations (max |r_i - 1| = {:.3g})",
                        last.iterations, last.ratio_history.back().max_deviation())),
      last_(std::move(last)) {}

template <int Dim>
Point<Dim> centroid(std::span<const Point<Dim>> vertices) {
  Point<Dim> c = Point<Dim>::Zero();
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

template <int Dim>
double diameter(std::span<const Point<Dim>> vertices) {
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      d = std::max(d, (vertices[i] - vertices[j]).norm());
    }
  }
  return d;
}

template <int Dim>
RadiusRatios radius_ratios(std::span<const Point<Dim>> vertices) {
  const std::size_t k = vertices.size();
  const Point<Dim> c = centroid<Dim>(vertices);
  const double threshold = kRejectionRadius * diameter<Dim>(vertices);
  std::vector<double> radius(k);
  for (std::size_t i = 0; i < k; ++i) {
    radius[i] = (vertices[i] - c).norm();
    if (!(radius[i] > threshold)) {
      throw NearCentroidVertex(static_cast<int>(i), radius[i], threshold);
    }
  }
  RadiusRatios out;
  out.values.resize(k);
  for (std::size_t i = 0; i < k; ++i) out.values[i] = radius[(i + k - 1) % k] / radius[i];
  return out;
}

template <int Dim>
RadiusEnvelope radius_envelope(const Triangle<Dim>& t) {
  const Point<Dim> c = centroid(t);
  RadiusEnvelope e{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& v : t) {
    const double r = (v - c).norm();
    e.max = std::max(e.max, r);
    e.min = std::min(e.min, r);
  }
  return e;
}

template <int Dim>
Triangle<Dim> transform_triangle(const Triangle<Dim>& t) {
  Triangle<Dim> out;
  const std::span<const Point<Dim>> in(t);
  regularize<Dim>(in, centroid<Dim>(in), std::span<Point<Dim>>(out));
  return out;
}

template <int Dim>
TriangleIteration<Dim> iterate_triangle(const Triangle<Dim>& t, double tol, int max_iter) {
  if (!(tol > 0.0)) throw InvalidArgument("iterate_triangle: tol must be positive");
  if (max_iter < 0) throw InvalidArgument("iterate_triangle: max_iter must be non-negative");

  TriangleIteration<Dim> state;
  state.triangle = t;
  state.ratio_history.push_back(radius_ratios(t));
  state.envelope_history.push_back(radius_envelope(t));
  while (state.ratio_history.back().max_deviation() >= tol) {
    if (state.iterations == max_iter) throw MaxIterExceeded<Dim>(std::move(state));
    state.triangle = transform_triangle(state.triangle);
    ++state.iterations;
    state.ratio_history.push_back(radius_ratios(state.triangle));
    state.envelope_history.push_back(radius_envelope(state.triangle));
  }
  return state;
}

Polygon transform_polygon(std::span<const Point2> polygon) {
  if (polygon.size() < 3) {
    throw InvalidArgument(fmt::format("transform_polygon: need k >= 3 vertices, got {}",
                                      polygon.size()));
  }
  const Point2 c = centroid<2>(polygon);
  Polygon centred(polygon.begin(), polygon.end());
  for (auto& v : centred) v -= c;
  Polygon out(centred.size());
  regularize<2>(centred, Point2::Zero(), out);
  return out;
}

template class MaxIterExceeded<2>;
template class MaxIterExceeded<3>;

#define REGMESH_INSTANTIATE(D)                                                        \
  template Point<D> centroid<D>(std::span<const Point<D>>);                           \
  template double diameter<D>(std::span<const Point<D>>);                             \
  template RadiusRatios radius_ratios<D>(std::span<const Point<D>>);                  \
  template RadiusEnvelope radius_envelope<D>(const Triangle<D>&);                     \
  template Triangle<D> transform_triangle<D>(const Triangle<D>&);                     \
  template TriangleIteration<D> iterate_triangle<D>(const Triangle<D>&, double, int);

REGMESH_INSTANTIATE(2)
REGMESH_INSTANTIATE(3)

#undef REGMESH_INSTANTIATE

}  // namespace regmesh
