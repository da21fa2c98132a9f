#include "regmesh/smoother.hpp"

#include <algorithm>
#include <array>

#include <fmt/format.h>

#include "regmesh/errors.hpp"
#include "regmesh/geom_core.hpp"
#include "regmesh/quality.hpp"

namespace regmesh {

namespace {

// Outward faces of a positively oriented tet (0, 1, 2, 3).
constexpr std::array<std::array<int, 3>, 4> kTetFaces = {{{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}};

// For each local tet vertex: (face, position within face) for the 3 faces containing it.
constexpr auto kFacesOfVertex = [] {
  std::array<std::array<std::array<int, 2>, 3>, 4> out{};
  std::array<int, 4> n{};
  for (int f = 0; f < 4; ++f) {
    for (int p = 0; p < 3; ++p) {
      const int v = kTetFaces[f][p];
      out[v][n[v]++] = {f, p};
    }
  }
  return out;
}();

template <int Dim>
double max_displacement(const std::vector<Point<Dim>>& a, const std::vector<Point<Dim>>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i] - b[i]).norm());
  return d;
}

struct StepOutcome {
  bool inverted = false;
  std::vector<Index> bad_cells;
};

template <int Dim>
std::pair<Mesh<Dim>, StepOutcome> step_impl(const Mesh<Dim>& mesh, const SmoothOptions& options) {
  auto moved = mesh.with_vertices(
      transform_positions<Dim>(mesh, mesh.vertices(), options.boundary_policy));
  const ValidityReport report = validate(moved);
  StepOutcome outcome;
  if (report.is_valid) return {std::move(moved), outcome};

  outcome.inverted = true;
  outcome.bad_cells = report.inverted_cells;
  outcome.bad_cells.insert(outcome.bad_cells.end(), report.degenerate_cells.begin(),
                           report.degenerate_cells.end());
  std::sort(outcome.bad_cells.begin(), outcome.bad_cells.end());
  outcome.bad_cells.erase(std::unique(outcome.bad_cells.begin(), outcome.bad_cells.end()),
                          outcome.bad_cells.end());
  switch (options.on_inversion) {
    case InversionPolicy::Abort:
      throw InvertedMeshAfterStep(outcome.bad_cells);
    case InversionPolicy::RevertStep:
      return {mesh, outcome};
    case InversionPolicy::Accept:
      break;
  }
  return {std::move(moved), outcome};
}

}  // namespace

void SmoothOptions::check() const {
  if (max_iterations < 1) {
    throw InvalidArgument(fmt::format("max_iterations must be >= 1, got {}", max_iterations));
  }
  if (!(displacement_tol >= 0.0)) {
    throw InvalidArgument(fmt::format("displacement_tol must be >= 0, got {}", displacement_tol));
  }
}

template <int Dim>
std::vector<Point<Dim>> transform_positions(const Mesh<Dim>& mesh,
                                            std::span<const Point<Dim>> positions,
                                            BoundaryPolicy policy) {
  if (positions.size() != mesh.vertex_count()) {
    throw InvalidArgument("transform_positions: position count differs from the mesh");
  }
  const auto& cells = mesh.cells();
  const auto& adj = mesh.adjacency();
  std::vector<Point<Dim>> out(positions.begin(), positions.end());

  if constexpr (Dim == 2) {
    std::vector<Triangle<2>> images(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const Triangle<2> t = {positions[cells[c][0]], positions[cells[c][1]], positions[cells[c][2]]};
      images[c] = transform_triangle(t);
    }
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if (policy == BoundaryPolicy::Fixed && mesh.boundary_mask()[k]) continue;
      const auto inc = adj.incident(static_cast<Index>(k));
      if (inc.empty()) continue;
      Point2 sum = Point2::Zero();
      for (const auto& [cell, local] : inc) sum += images[cell][local];
      out[k] = sum / static_cast<double>(inc.size());
    }
  } else {
    std::vector<std::array<Triangle<3>, 4>> images(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int f = 0; f < 4; ++f) {
        Triangle<3> t;
        for (int p = 0; p < 3; ++p) t[p] = positions[cells[c][kTetFaces[f][p]]];
        images[c][f] = transform_triangle(t);
      }
    }
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if (policy == BoundaryPolicy::Fixed && mesh.boundary_mask()[k]) continue;
      const auto inc = adj.incident(static_cast<Index>(k));
      if (inc.empty()) continue;
      Point3 sum = Point3::Zero();
      for (const auto& [cell, local] : inc) {
        for (const auto& [face, pos] : kFacesOfVertex[local]) sum += images[cell][face][pos];
      }
      out[k] = sum / static_cast<double>(3 * inc.size());
    }
  }
  return out;
}

TriMesh smooth_step_tri(const TriMesh& mesh, const SmoothOptions& options) {
  options.check();
  return step_impl<2>(mesh, options).first;
}

TetMesh smooth_step_tet(const TetMesh& mesh, const SmoothOptions& options) {
  options.check();
  return step_impl<3>(mesh, options).first;
}

template <int Dim>
SmoothResult<Dim> run(const Mesh<Dim>& mesh, const SmoothOptions& options) {
  options.check();
  SmoothResult<Dim> result{mesh, {}};
  SmoothReport& report = result.report;
  if (options.record_history) {
    report.quality_history.push_back(mean_min_quality(mesh));
    report.displacement_history.push_back(0.0);
  }
  report.terminated_by = Termination::MaxIter;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double threshold = options.displacement_tol * result.mesh.bbox_diagonal();
    auto [next, outcome] = step_impl<Dim>(result.mesh, options);
    if (outcome.inverted && options.on_inversion == InversionPolicy::RevertStep) {
      report.terminated_by = Termination::Inversion;
      break;
    }
    const double disp = max_displacement(result.mesh.vertices(), next.vertices());
    result.mesh = std::move(next);
    ++report.iterations_run;
    if (options.record_history) {
      report.quality_history.push_back(mean_min_quality(result.mesh));
      report.displacement_history.push_back(disp);
    }
    if (disp < threshold || disp == 0.0) {
      report.terminated_by = Termination::Tolerance;
      break;
    }
  }
  return result;
}

std::string_view to_string(BoundaryPolicy p) {
  return p == BoundaryPolicy::Fixed ? "fixed" : "free";
}

std::string_view to_string(InversionPolicy p) {
  switch (p) {
    case InversionPolicy::Abort:
      return "abort";
    case InversionPolicy::RevertStep:
      return "revert";
    case InversionPolicy::Accept:
      return "accept";
  }
  return "?";
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Tolerance:
      return "tolerance";
    case Termination::MaxIter:
      return "max_iter";
    case Termination::Inversion:
      return "inversion";
  }
  return "?";
}

template std::vector<Point<2>> transform_positions<2>(const Mesh<2>&, std::span<const Point<2>>,
                                                      BoundaryPolicy);
template std::vector<Point<3>> transform_positions<3>(const Mesh<3>&, std::span<const Point<3>>,
                                                      BoundaryPolicy);
template SmoothResult<2> run<2>(const Mesh<2>&, const SmoothOptions&);
template SmoothResult<3> run<3>(const Mesh<3>&, const SmoothOptions&);

}  // namespace regmesh
