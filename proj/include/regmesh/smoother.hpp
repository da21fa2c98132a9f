#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "regmesh/mesh.hpp"
#include "regmesh/quality.hpp"

namespace regmesh {

enum class BoundaryPolicy { Fixed, Free };
enum class InversionPolicy { Abort, RevertStep, Accept };
enum class Termination { Tolerance, MaxIter, Inversion };

struct SmoothOptions {
  BoundaryPolicy boundary_policy = BoundaryPolicy::Fixed;
  int max_iterations = 100;
  /// Relative to the bounding-box diagonal.
  double displacement_tol = 1e-8;
  InversionPolicy on_inversion = InversionPolicy::Abort;
  bool record_history = true;

  /// Throws InvalidArgument unless max_iterations >= 1 and displacement_tol >= 0.
  void check() const;
};

struct SmoothReport {
  int iterations_run = 0;
  /// Entry 0 is the input mesh; one more entry per applied step.
  std::vector<QualitySample> quality_history;
  std::vector<double> displacement_history;
  Termination terminated_by = Termination::MaxIter;
};

template <int Dim>
struct SmoothResult {
  Mesh<Dim> mesh;
  SmoothReport report;
};

/// The mesh transformation evaluated at arbitrary positions over the
/// connectivity of `mesh`: every vertex moves to the mean of its images under
/// the element transformation of each incident triangle (2D) or of each
/// incident tet face containing it (3D, faces oriented outward, so a face
/// shared by two tets contributes once per tet). All images are computed from
/// `positions`; sums per vertex run in ascending cell order. Fixed policy
/// leaves boundary vertices in place.
template <int Dim>
std::vector<Point<Dim>> transform_positions(const Mesh<Dim>& mesh,
                                            std::span<const Point<Dim>> positions,
                                            BoundaryPolicy policy);

/// One smoothing step followed by validation. On an inverted or flat cell:
/// Abort throws InvertedMeshAfterStep, RevertStep returns the input mesh,
/// Accept returns the new mesh anyway.
TriMesh smooth_step_tri(const TriMesh& mesh, const SmoothOptions& options);
TetMesh smooth_step_tet(const TetMesh& mesh, const SmoothOptions& options);

/// Steps until the largest vertex move drops below
/// displacement_tol * bbox_diagonal, max_iterations is reached, or a step
/// inverts a cell under RevertStep (the returned mesh is then the last valid one).
template <int Dim>
SmoothResult<Dim> run(const Mesh<Dim>& mesh, const SmoothOptions& options);

std::string_view to_string(BoundaryPolicy p);
std::string_view to_string(InversionPolicy p);
std::string_view to_string(Termination t);

}  // namespace regmesh
