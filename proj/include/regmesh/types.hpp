#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace regmesh {

using Index = std::int32_t;

template <int Dim>
using Point = Eigen::Matrix<double, Dim, 1>;

using Point2 = Point<2>;
using Point3 = Point<3>;

/// Ordered vertex triple. Planar triangles are counter-clockwise.
template <int Dim>
using Triangle = std::array<Point<Dim>, 3>;

/// Vertices of a tetrahedron, positively oriented when
/// det(x1 - x0, x2 - x0, x3 - x0) > 0.
using Tetrahedron = std::array<Point3, 4>;

/// Planar polygon, vertices in cyclic order.
using Polygon = std::vector<Point2>;

/// Cell arity of a mesh living in `Dim` dimensions: triangles in 2D, tets in 3D.
template <int Dim>
inline constexpr int kCellSize = Dim + 1;

template <int Dim>
using Cell = std::array<Index, kCellSize<Dim>>;

}  // namespace regmesh
