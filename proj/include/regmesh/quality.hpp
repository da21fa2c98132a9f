#pragma once

#include <vector>

#include "regmesh/mesh.hpp"

namespace regmesh {

/// Shortest over longest edge, in (0, 1]. Throws DegenerateElement when the
/// longest edge is zero.
template <int Dim>
double tri_quality(const Triangle<Dim>& t);

/// Mean ratio 3 det(S)^{2/3} / trace(S^T S), S = D(T) W^{-1}, with
/// D(T) = (x1 - x0, x2 - x0, x3 - x0) and W the edge matrix of the regular
/// tetrahedron (1, 0, 0), (1/2, sqrt3/2, 0), (1/2, sqrt3/6, sqrt(2/3)).
/// Equals 1 exactly on regular tets. Throws DegenerateElement if det D <= 0.
double tet_mean_ratio(const Tetrahedron& t);

struct QualityHistogram {
  std::vector<double> bin_edges;  ///< bins + 1 edges from 0 to 1
  std::vector<std::size_t> counts;
  std::vector<double> per_cell;
  double mean = 0.0;
  double min = 0.0;
};

inline constexpr int kDefaultQualityBins = 20;

/// Per-cell quality (tri_quality in 2D, tet_mean_ratio in 3D), mean, min and
/// an equal-width histogram on (0, 1] with right-closed bins.
template <int Dim>
QualityHistogram mesh_quality(const Mesh<Dim>& mesh, int bins = kDefaultQualityBins);

struct QualitySample {
  double mean = 0.0;
  double min = 0.0;
};

/// Mean and minimum of cell_quality_or_zero over all cells.
template <int Dim>
QualitySample mean_min_quality(const Mesh<Dim>& mesh);

/// Quality of cell c that never throws: inverted or flat cells score 0.
template <int Dim>
double cell_quality_or_zero(const Mesh<Dim>& mesh, std::size_t c);

}  // namespace regmesh
