#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "regmesh/mesh.hpp"
#include "regmesh/random.hpp"
#include "regmesh/smoother.hpp"

namespace regmesh {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A vertex-relocation operator on flattened coordinates (x0, y0, x1, y1, ...).
using VectorMap = std::function<Vector(const Vector&)>;

template <int Dim>
Vector flatten(std::span<const Point<Dim>> points);

template <int Dim>
std::vector<Point<Dim>> unflatten(const Vector& x);

/// transform_triangle on a planar triangle, 6 coordinates.
VectorMap triangle_operator();

/// The mesh transformation over the connectivity of `mesh`.
VectorMap mesh_operator(const TriMesh& mesh, BoundaryPolicy policy = BoundaryPolicy::Free);

/// Free-boundary mesh transformation followed by the similarity that restores
/// the input's centroid and RMS radius:
///
///   F(y) = c(y) + (T(y) - c(T(y))) * rho(y) / rho(T(y))
///
/// F commutes with similarities and fixes every regular N-simple mesh, so its
/// spectrum there carries the four unit eigenvalues of the orbit directions.
VectorMap normalized_mesh_operator(const TriMesh& mesh);

enum class OperatorKind { Raw, Normalized };

VectorMap make_mesh_operator(const TriMesh& mesh, OperatorKind kind);

inline constexpr double kDefaultJacobianStep = 1e-6;

/// Central differences, h = step * max(1, |x|_inf). Throws MapUndefined when a
/// probe raises a library error or returns non-finite values.
DenseMatrix numerical_jacobian(const VectorMap& map, const Vector& x,
                               double step = kDefaultJacobianStep);

enum class Winding { Clockwise, CounterClockwise };

/// Unit-edge equilateral triangle with the given vertex order.
Triangle<2> equilateral_triangle(Winding winding);

/// Jacobian of the triangle transformation at an equilateral triangle:
///
///   (A B C; C A B; B C A),  A = [[3/4, -1/(4 sqrt3)], [1/(4 sqrt3), 3/4]],
///   B = [[1/4, -1/(4 sqrt3)], [1/(4 sqrt3), 1/4]], C = [[0, 1/(2 sqrt3)], [-1/(2 sqrt3), 0]]
///
/// These blocks hold for clockwise labelling. Counter-clockwise labelling
/// transposes every block.
DenseMatrix analytic_triangle_jacobian(Winding winding = Winding::Clockwise);

/// 14x14 Jacobian of the free-boundary mesh transformation at
/// gen_simple_mesh(7), assembled block by block (counter-clockwise cells).
DenseMatrix simple6_jacobian();

/// Free-boundary Jacobian at an equilateral mesh. Every cell adds
/// A^T/|S_k| on the diagonal, B^T/|S_k| towards the next vertex of the cell and
/// C^T/|S_k| towards the previous one, |S_k| being the number of cells at k.
/// Throws NotEquilateral (edge ratio below 1 - 1e-9) or BadValence (an inner
/// vertex without exactly six cells).
DenseMatrix equilateral_mesh_jacobian(const TriMesh& mesh);

enum class Classification { AttractorOrbit, Saddle, Inconclusive };

struct SpectrumReport {
  /// Sorted by descending modulus, ties by descending imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  int unit_count = 0;
  /// Largest modulus among eigenvalues not counted as unit; 0 if there are none.
  double max_non_unit_modulus = 0.0;
  Classification classification = Classification::Inconclusive;
};

inline constexpr double kDefaultUnitTol = 1e-6;
inline constexpr int kMaxSpectrumDimension = 4096;

/// Saddle if a modulus exceeds 1 + unit_tol; attractor orbit if exactly four
/// eigenvalues lie within unit_tol of 1 and the rest have modulus below
/// 1 - unit_tol; inconclusive otherwise.
SpectrumReport spectrum(const DenseMatrix& matrix, double unit_tol = kDefaultUnitTol);

/// x -> scale * R(angle) * x + translation
struct Similarity {
  double angle = 0.0;
  double scale = 1.0;
  Point2 translation = Point2::Zero();

  Point2 apply(const Point2& p) const;
  Eigen::Matrix2d linear() const;
};

TriMesh apply(const Similarity& g, const TriMesh& mesh);

struct OrbitDistance {
  /// min_g RMS(g.a - b) / RMS radius of b: the sine of the angle between the
  /// centred configurations viewed as complex vectors.
  double d = 0.0;
  Similarity aligning_similarity;
};

/// Throws IncompatibleMeshes for different vertex counts or a configuration
/// collapsed to one point.
OrbitDistance similarity_distance(std::span<const Point2> a, std::span<const Point2> b);

/// As above; the meshes must also share their cells.
OrbitDistance similarity_distance(const TriMesh& a, const TriMesh& b);

struct SurveySample {
  VectorMap map;
  Vector point;
  double quality = 0.0;
};

using SurveySampler = std::function<SurveySample(Rng&)>;

struct SurveyRow {
  double quality = 0.0;
  std::vector<double> moduli;  ///< descending
  int unit_count = 0;
  double frobenius_norm = 0.0;
  double spectral_norm = 0.0;
};

struct SurveyTable {
  std::vector<SurveyRow> rows;
  int skipped = 0;
};

/// Numerical Jacobian, spectrum and quality for `count` samples drawn from a
/// single seeded generator. Samples whose Jacobian is undefined are skipped and
/// counted.
SurveyTable spectrum_survey(const SurveySampler& sampler, int count, std::uint64_t seed,
                            double unit_tol = kDefaultUnitTol);

/// Triangles with vertices uniform in the unit square, rejected until the edge
/// ratio reaches min_quality and the orientation is counter-clockwise.
SurveySampler random_triangle_sampler(double min_quality);

/// gen_simple_mesh(n) with every coordinate perturbed by uniform noise of
/// relative amplitude `noise`, probed with the given operator.
SurveySampler simple_mesh_sampler(int n, double noise, OperatorKind kind);

std::string_view to_string(Classification c);

}  // namespace regmesh
