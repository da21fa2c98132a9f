#include "regmesh/quality.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "regmesh/errors.hpp"
#include "compensated_sum.hpp"

namespace regmesh {

namespace {

const Eigen::Matrix3d& regular_edge_matrix_inverse() {
  static const Eigen::Matrix3d inv = [] {
    Eigen::Matrix3d w;
    w << 1.0, 0.5, 0.5,                                //
        0.0, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 6.0,  //
        0.0, 0.0, std::sqrt(2.0 / 3.0);
    return Eigen::Matrix3d(w.inverse());
  }();
  return inv;
}

template <int Dim>
double cell_quality(const Mesh<Dim>& mesh, std::size_t c) {
  const auto pts = mesh.cell_points(c);
  if constexpr (Dim == 2) {
    return tri_quality<2>(pts);
  } else {
    return tet_mean_ratio(pts);
  }
}

}  // namespace

template <int Dim>
double tri_quality(const Triangle<Dim>& t) {
  const double q = edge_ratio(t);
  if (!(q > 0.0)) throw DegenerateElement("triangle has zero-length edges");
  return q;
}

double tet_mean_ratio(const Tetrahedron& t) {
  Eigen::Matrix3d d;
  d << t[1] - t[0], t[2] - t[0], t[3] - t[0];
  const double det_d = d.determinant();
  if (!(det_d > 0.0)) {
    throw DegenerateElement(fmt::format("tetrahedron has non-positive volume ({:.3g})", det_d));
  }
  const Eigen::Matrix3d s = d * regular_edge_matrix_inverse();
  const double det_s = s.determinant();
  return 3.0 * std::cbrt(det_s * det_s) / (s.transpose() * s).trace();
}

template <int Dim>
QualityHistogram mesh_quality(const Mesh<Dim>& mesh, int bins) {
  if (bins < 1) throw InvalidArgument(fmt::format("mesh_quality: bins must be >= 1, got {}", bins));
  QualityHistogram h;
  h.bin_edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) h.bin_edges[b] = static_cast<double>(b) / bins;
  h.counts.assign(bins, 0);
  h.per_cell.resize(mesh.cell_count());
  if (mesh.cell_count() == 0) return h;

  detail::CompensatedSum sum;
  h.min = 1.0;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    double q;
    try {
      q = cell_quality(mesh, c);
    } catch (const DegenerateElement& e) {
      throw DegenerateElement(e.what(), static_cast<Index>(c));
    }
    h.per_cell[c] = q;
    sum.add(q);
    h.min = std::min(h.min, q);
    // right-closed bins (b/bins, (b+1)/bins]
    const int bin = std::clamp(static_cast<int>(std::ceil(q * bins)) - 1, 0, bins - 1);
    ++h.counts[bin];
  }
  h.mean = sum.value() / static_cast<double>(mesh.cell_count());
  return h;
}

template <int Dim>
double cell_quality_or_zero(const Mesh<Dim>& mesh, std::size_t c) {
  if (!(mesh.signed_measure(c) > 0.0)) return 0.0;
  try {
    return cell_quality(mesh, c);
  } catch (const DegenerateElement&) {
    return 0.0;
  }
}

template <int Dim>
QualitySample mean_min_quality(const Mesh<Dim>& mesh) {
  QualitySample s{0.0, 1.0};
  if (mesh.cell_count() == 0) return s;
  detail::CompensatedSum sum;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const double q = cell_quality_or_zero(mesh, c);
    sum.add(q);
    s.min = std::min(s.min, q);
  }
  s.mean = sum.value() / static_cast<double>(mesh.cell_count());
  return s;
}

template double tri_quality<2>(const Triangle<2>&);
template double tri_quality<3>(const Triangle<3>&);
template QualityHistogram mesh_quality<2>(const Mesh<2>&, int);
template QualityHistogram mesh_quality<3>(const Mesh<3>&, int);
template double cell_quality_or_zero<2>(const Mesh<2>&, std::size_t);
template double cell_quality_or_zero<3>(const Mesh<3>&, std::size_t);
template QualitySample mean_min_quality<2>(const Mesh<2>&);
template QualitySample mean_min_quality<3>(const Mesh<3>&);

}  // namespace regmesh
