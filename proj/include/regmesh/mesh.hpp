#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "regmesh/errors.hpp"
#include "regmesh/types.hpp"

namespace regmesh {

/// Occurrence of a vertex in a cell: `cell` contains the vertex at position `local`.
struct Incidence {
  Index cell;
  int local;
  bool operator==(const Incidence&) const = default;
};

/// Per-vertex incident cells in ascending cell order, stored compressed.
class AdjacencyMap {
 public:
  AdjacencyMap() = default;
  template <std::size_t K>
  AdjacencyMap(std::size_t vertex_count, std::span<const std::array<Index, K>> cells);

  std::span<const Incidence> incident(Index vertex) const {
    return {entries_.data() + offsets_[vertex], entries_.data() + offsets_[vertex + 1]};
  }
  std::size_t valence(Index vertex) const { return offsets_[vertex + 1] - offsets_[vertex]; }
  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t total_incidences() const { return entries_.size(); }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> entries_;
};

/// Vertex positions over a fixed connectivity: triangles for Dim = 2,
/// tetrahedra for Dim = 3. Immutable; `with_vertices` shares the topology.
template <int Dim>
class Mesh {
 public:
  using PointType = Point<Dim>;
  using CellType = Cell<Dim>;

  /// Validates and builds. When `boundary` is absent, vertices on an edge (2D)
  /// or face (3D) used by exactly one cell are marked boundary.
  /// Throws IndexOutOfRange, InvalidArgument (repeated index in a cell),
  /// DisconnectedConnectivity, InvertedCell, DuplicateVertex.
  static Mesh build(std::vector<PointType> vertices, std::vector<CellType> cells,
                    std::optional<std::vector<bool>> boundary = std::nullopt);

  /// Same topology, new positions. No validation.
  Mesh with_vertices(std::vector<PointType> vertices) const;

  const std::vector<PointType>& vertices() const { return vertices_; }
  const std::vector<CellType>& cells() const { return topology_->cells; }
  const std::vector<bool>& boundary_mask() const { return topology_->boundary; }
  const AdjacencyMap& adjacency() const { return topology_->adjacency; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t cell_count() const { return topology_->cells.size(); }

  std::array<PointType, Dim + 1> cell_points(std::size_t c) const;
  /// Signed area (2D) or volume (3D) of cell c.
  double signed_measure(std::size_t c) const;
  double bbox_diagonal() const;

  bool operator==(const Mesh& other) const;

 private:
  struct Topology {
    std::vector<CellType> cells;
    std::vector<bool> boundary;
    AdjacencyMap adjacency;
  };

  Mesh(std::vector<PointType> vertices, std::shared_ptr<const Topology> topology)
      : vertices_(std::move(vertices)), topology_(std::move(topology)) {}

  std::vector<PointType> vertices_;
  std::shared_ptr<const Topology> topology_;
};

using TriMesh = Mesh<2>;
using TetMesh = Mesh<3>;

template <int Dim>
const AdjacencyMap& adjacency(const Mesh<Dim>& mesh) {
  return mesh.adjacency();
}

struct ValidityReport {
  bool is_valid = true;
  std::vector<Index> inverted_cells;    ///< signed area/volume <= 0
  std::vector<Index> degenerate_cells;  ///< |signed measure| <= 1e-12 * longest_edge^Dim
  /// Pairs of cells whose interiors intersect. Only filled by the exhaustive check.
  std::vector<std::pair<Index, Index>> overlapping_pairs;
  /// Minimum over cells of shortest / longest edge.
  double min_distortion = 1.0;
};

/// Cheap checks (orientation, flatness, distortion). With `check_overlaps`
/// also runs a pairwise separating-axis test, limited to kMaxOverlapCells cells.
template <int Dim>
ValidityReport validate(const Mesh<Dim>& mesh, bool check_overlaps = false);

inline constexpr std::size_t kMaxOverlapCells = 2000;

/// Shortest over longest edge of a simplex; 0 when all vertices coincide.
template <std::size_t K, int Dim>
double edge_ratio(const std::array<Point<Dim>, K>& pts) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      const double e = (pts[i] - pts[j]).squaredNorm();
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  // one rounding fewer than lo / hi on lengths: a right isosceles gives sqrt(0.5) exactly
  return hi > 0.0 ? std::sqrt(lo / hi) : 0.0;
}

}  // namespace regmesh
