#include "regmesh/mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <queue>
#include <unordered_map>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "regmesh/errors.hpp"

namespace regmesh {

template <std::size_t K>
AdjacencyMap::AdjacencyMap(std::size_t vertex_count, std::span<const std::array<Index, K>> cells)
    : offsets_(vertex_count + 1, 0) {
  for (const auto& cell : cells) {
    for (Index v : cell) ++offsets_[v + 1];
  }
  for (std::size_t k = 0; k < vertex_count; ++k) offsets_[k + 1] += offsets_[k];
  entries_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t j = 0; j < K; ++j) {
      entries_[cursor[cells[c][j]]++] = Incidence{static_cast<Index>(c), static_cast<int>(j)};
    }
  }
}

template AdjacencyMap::AdjacencyMap(std::size_t, std::span<const std::array<Index, 3>>);
template AdjacencyMap::AdjacencyMap(std::size_t, std::span<const std::array<Index, 4>>);

namespace {

// Sorted vertex tuple of an edge (2D) or face (3D).
template <int Dim>
using Facet = std::array<Index, Dim>;

template <int Dim>
std::vector<Facet<Dim>> facets_of(const Cell<Dim>& cell) {
  std::vector<Facet<Dim>> out;
  for (int skip = 0; skip < Dim + 1; ++skip) {
    Facet<Dim> f{};
    int n = 0;
    for (int j = 0; j < Dim + 1; ++j) {
      if (j != skip) f[n++] = cell[j];
    }
    std::sort(f.begin(), f.end());
    out.push_back(f);
  }
  return out;
}

template <int Dim>
double signed_measure_of(const std::array<Point<Dim>, Dim + 1>& p) {
  if constexpr (Dim == 2) {
    const Point2 a = p[1] - p[0];
    const Point2 b = p[2] - p[0];
    return 0.5 * (a.x() * b.y() - a.y() * b.x());
  } else {
    Eigen::Matrix3d d;
    d << p[1] - p[0], p[2] - p[0], p[3] - p[0];
    return d.determinant() / 6.0;
  }
}

template <int Dim>
void check_connected(const std::vector<Cell<Dim>>& cells) {
  if (cells.empty()) return;
  std::map<Facet<Dim>, std::vector<Index>> by_facet;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& f : facets_of<Dim>(cells[c])) by_facet[f].push_back(static_cast<Index>(c));
  }
  std::vector<bool> seen(cells.size(), false);
  std::queue<Index> todo;
  todo.push(0);
  seen[0] = true;
  while (!todo.empty()) {
    const Index c = todo.front();
    todo.pop();
    for (const auto& f : facets_of<Dim>(cells[c])) {
      for (Index other : by_facet[f]) {
        if (!seen[other]) {
          seen[other] = true;
          todo.push(other);
        }
      }
    }
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (!seen[c]) throw DisconnectedConnectivity(static_cast<Index>(c));
  }
}

template <int Dim>
std::vector<bool> detect_boundary(std::size_t n, const std::vector<Cell<Dim>>& cells) {
  std::map<Facet<Dim>, int> count;
  for (const auto& cell : cells) {
    for (const auto& f : facets_of<Dim>(cell)) ++count[f];
  }
  std::vector<bool> boundary(n, false);
  for (const auto& [f, k] : count) {
    if (k == 1) {
      for (Index v : f) boundary[v] = true;
    }
  }
  return boundary;
}

struct ArrayHash {
  template <std::size_t K>
  std::size_t operator()(const std::array<std::int64_t, K>& a) const {
    std::size_t h = 0;
    for (auto v : a) h = h * 1000003u ^ std::hash<std::int64_t>{}(v);
    return h;
  }
};

// Hash grid with cell size tol; two points within tol land in neighbouring buckets.
template <int Dim>
void check_no_duplicates(const std::vector<Point<Dim>>& pts, double tol) {
  if (pts.size() < 2) return;
  if (!(tol > 0.0)) throw DuplicateVertex(0, 1);
  using Key = std::array<std::int64_t, Dim>;
  std::unordered_map<Key, std::vector<Index>, ArrayHash> grid;
  auto key_of = [&](const Point<Dim>& p) {
    Key k;
    for (int d = 0; d < Dim; ++d) k[d] = static_cast<std::int64_t>(std::floor(p[d] / tol));
    return k;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Key k = key_of(pts[i]);
    const int neighbours = Dim == 2 ? 9 : 27;
    for (int code = 0; code < neighbours; ++code) {
      Key probe = k;
      int rest = code;
      for (int d = 0; d < Dim; ++d) {
        probe[d] += rest % 3 - 1;
        rest /= 3;
      }
      auto it = grid.find(probe);
      if (it == grid.end()) continue;
      for (Index j : it->second) {
        if ((pts[i] - pts[j]).norm() <= tol) throw DuplicateVertex(j, static_cast<Index>(i));
      }
    }
    grid[k].push_back(static_cast<Index>(i));
  }
}

// Separating axes between two simplices: edge normals in 2D; face normals
// and edge-edge cross products in 3D.
template <int Dim>
std::vector<Point<Dim>> candidate_axes(const std::array<Point<Dim>, Dim + 1>& a,
                                       const std::array<Point<Dim>, Dim + 1>& b) {
  std::vector<Point<Dim>> axes;
  auto edges = [](const std::array<Point<Dim>, Dim + 1>& p) {
    std::vector<Point<Dim>> e;
    for (int i = 0; i < Dim + 1; ++i) {
      for (int j = i + 1; j < Dim + 1; ++j) e.push_back(p[j] - p[i]);
    }
    return e;
  };
  const auto ea = edges(a);
  const auto eb = edges(b);
  if constexpr (Dim == 2) {
    for (const auto* set : {&ea, &eb}) {
      for (const auto& e : *set) axes.emplace_back(-e.y(), e.x());
    }
  } else {
    for (const auto* p : {&a, &b}) {
      for (int skip = 0; skip < 4; ++skip) {
        std::array<Point3, 3> f;
        int n = 0;
        for (int j = 0; j < 4; ++j) {
          if (j != skip) f[n++] = (*p)[j];
        }
        axes.push_back((f[1] - f[0]).cross(f[2] - f[0]));
      }
    }
    for (const auto& x : ea) {
      for (const auto& y : eb) axes.push_back(x.cross(y));
    }
  }
  return axes;
}

template <int Dim>
bool interiors_overlap(const std::array<Point<Dim>, Dim + 1>& a,
                       const std::array<Point<Dim>, Dim + 1>& b, double tol) {
  for (const auto& axis : candidate_axes<Dim>(a, b)) {
    const double len = axis.norm();
    if (len <= 1e-300) continue;
    const Point<Dim> n = axis / len;
    double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
    for (const auto& p : a) {
      amin = std::min(amin, n.dot(p));
      amax = std::max(amax, n.dot(p));
    }
    for (const auto& p : b) {
      bmin = std::min(bmin, n.dot(p));
      bmax = std::max(bmax, n.dot(p));
    }
    if (std::min(amax, bmax) - std::max(amin, bmin) <= tol) return false;
  }
  return true;
}

}  // namespace

template <int Dim>
Mesh<Dim> Mesh<Dim>::build(std::vector<PointType> vertices, std::vector<CellType> cells,
                           std::optional<std::vector<bool>> boundary) {
  const std::size_t n = vertices.size();
  for (const auto& p : vertices) {
    if (!p.allFinite()) throw InvalidArgument("mesh vertex with non-finite coordinate");
  }
  for (const auto& cell : cells) {
    for (std::size_t j = 0; j < cell.size(); ++j) {
      if (cell[j] < 0 || static_cast<std::size_t>(cell[j]) >= n) {
        throw IndexOutOfRange(0, cell[j], n);
      }
      for (std::size_t i = 0; i < j; ++i) {
        if (cell[i] == cell[j]) {
          throw InvalidArgument(fmt::format("cell repeats vertex index {}", cell[j]));
        }
      }
    }
  }
  if (boundary && boundary->size() != n) {
    throw InvalidArgument(
        fmt::format("boundary mask has {} entries for {} vertices", boundary->size(), n));
  }

  check_connected<Dim>(cells);

  auto topo = std::make_shared<Topology>();
  topo->boundary = boundary ? std::move(*boundary) : detect_boundary<Dim>(n, cells);
  topo->adjacency = AdjacencyMap(n, std::span<const CellType>(cells));
  topo->cells = std::move(cells);
  Mesh mesh(std::move(vertices), std::move(topo));

  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const double m = mesh.signed_measure(c);
    if (!(m > 0.0)) throw InvertedCell(static_cast<Index>(c), m);
  }
  check_no_duplicates<Dim>(mesh.vertices_, 1e-12 * mesh.bbox_diagonal());
  return mesh;
}

template <int Dim>
Mesh<Dim> Mesh<Dim>::with_vertices(std::vector<PointType> vertices) const {
  if (vertices.size() != vertices_.size()) {
    throw InvalidArgument("with_vertices: vertex count differs from the mesh");
  }
  return Mesh(std::move(vertices), topology_);
}

template <int Dim>
std::array<Point<Dim>, Dim + 1> Mesh<Dim>::cell_points(std::size_t c) const {
  std::array<PointType, Dim + 1> out;
  const auto& cell = topology_->cells[c];
  for (int j = 0; j < Dim + 1; ++j) out[j] = vertices_[cell[j]];
  return out;
}

template <int Dim>
double Mesh<Dim>::signed_measure(std::size_t c) const {
  return signed_measure_of<Dim>(cell_points(c));
}

template <int Dim>
double Mesh<Dim>::bbox_diagonal() const {
  if (vertices_.empty()) return 0.0;
  PointType lo = vertices_.front();
  PointType hi = vertices_.front();
  for (const auto& p : vertices_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

template <int Dim>
bool Mesh<Dim>::operator==(const Mesh& other) const {
  return vertices_ == other.vertices_ && cells() == other.cells() &&
         boundary_mask() == other.boundary_mask();
}

template <int Dim>
ValidityReport validate(const Mesh<Dim>& mesh, bool check_overlaps) {
  ValidityReport report;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const auto pts = mesh.cell_points(c);
    const double measure = mesh.signed_measure(c);
    double longest = 0.0;
    for (int i = 0; i < Dim + 1; ++i) {
      for (int j = i + 1; j < Dim + 1; ++j) longest = std::max(longest, (pts[i] - pts[j]).norm());
    }
    if (measure <= 0.0) report.inverted_cells.push_back(static_cast<Index>(c));
    if (longest == 0.0 || std::abs(measure) <= 1e-12 * std::pow(longest, Dim)) {
      report.degenerate_cells.push_back(static_cast<Index>(c));
    }
    report.min_distortion = std::min(report.min_distortion, edge_ratio(pts));
  }
  if (check_overlaps) {
    if (mesh.cell_count() > kMaxOverlapCells) {
      throw InvalidArgument(fmt::format("overlap check limited to {} cells, mesh has {}",
                                        kMaxOverlapCells, mesh.cell_count()));
    }
    const double tol = 1e-12 * mesh.bbox_diagonal();
    std::vector<std::array<Point<Dim>, Dim + 1>> pts(mesh.cell_count());
    std::vector<Point<Dim>> lo(mesh.cell_count()), hi(mesh.cell_count());
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
      pts[c] = mesh.cell_points(c);
      lo[c] = hi[c] = pts[c][0];
      for (const auto& p : pts[c]) {
        lo[c] = lo[c].cwiseMin(p);
        hi[c] = hi[c].cwiseMax(p);
      }
    }
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        if (((hi[a].array() - lo[b].array()).minCoeff() <= tol) ||
            ((hi[b].array() - lo[a].array()).minCoeff() <= tol)) {
          continue;
        }
        if (interiors_overlap<Dim>(pts[a], pts[b], tol)) {
          report.overlapping_pairs.emplace_back(static_cast<Index>(a), static_cast<Index>(b));
        }
      }
    }
  }
  report.is_valid = report.inverted_cells.empty() && report.degenerate_cells.empty() &&
                    report.overlapping_pairs.empty();
  return report;
}

template class Mesh<2>;
template class Mesh<3>;
template ValidityReport validate<2>(const Mesh<2>&, bool);
template ValidityReport validate<3>(const Mesh<3>&, bool);

}  // namespace regmesh
