#include "regmesh/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "regmesh/errors.hpp"
#include "regmesh/generators.hpp"
#include "regmesh/geom_core.hpp"
#include "regmesh/quality.hpp"

namespace regmesh {

namespace {

using Block = Eigen::Matrix2d;

struct Blocks {
  Block a, b, c;
};

const Blocks& jacobian_blocks() {
  static const Blocks blocks = [] {
    const double s = 1.0 / (4.0 * std::sqrt(3.0));
    Blocks k;
    k.a << 0.75, -s, s, 0.75;
    k.b << 0.25, -s, s, 0.25;
    k.c << 0.0, 2.0 * s, -2.0 * s, 0.0;
    return k;
  }();
  return blocks;
}

void add_block(DenseMatrix& m, Index row, Index col, const Block& b) {
  m.block<2, 2>(2 * row, 2 * col) += b;
}

Point2 mean_point(const Vector& x) {
  const Eigen::Index n = x.size() / 2;
  Point2 c = Point2::Zero();
  for (Eigen::Index i = 0; i < n; ++i) c += x.segment<2>(2 * i);
  return c / static_cast<double>(n);
}

double rms_radius(const Vector& x, const Point2& c) {
  const Eigen::Index n = x.size() / 2;
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) s += (x.segment<2>(2 * i) - c).squaredNorm();
  return std::sqrt(s / static_cast<double>(n));
}

}  // namespace

template <int Dim>
Vector flatten(std::span<const Point<Dim>> points) {
  Vector x(static_cast<Eigen::Index>(Dim * points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) x.segment<Dim>(Dim * i) = points[i];
  return x;
}

template <int Dim>
std::vector<Point<Dim>> unflatten(const Vector& x) {
  if (x.size() % Dim != 0) throw InvalidArgument("unflatten: length is not a multiple of the dimension");
  std::vector<Point<Dim>> pts(x.size() / Dim);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = x.segment<Dim>(Dim * i);
  return pts;
}

VectorMap triangle_operator() {
  return [](const Vector& x) {
    if (x.size() != 6) throw InvalidArgument("triangle operator expects 6 coordinates");
    const Triangle<2> t = {x.segment<2>(0), x.segment<2>(2), x.segment<2>(4)};
    const Triangle<2> out = transform_triangle(t);
    return flatten<2>(out);
  };
}

VectorMap mesh_operator(const TriMesh& mesh, BoundaryPolicy policy) {
  return [mesh, policy](const Vector& x) {
    const auto pts = unflatten<2>(x);
    return flatten<2>(transform_positions<2>(mesh, pts, policy));
  };
}

VectorMap normalized_mesh_operator(const TriMesh& mesh) {
  const VectorMap raw = mesh_operator(mesh, BoundaryPolicy::Free);
  return [raw](const Vector& y) {
    const Vector ty = raw(y);
    const Point2 cy = mean_point(y);
    const Point2 cty = mean_point(ty);
    const double rho_ty = rms_radius(ty, cty);
    if (!(rho_ty > 0.0)) throw DegenerateElement("mesh collapsed to a point");
    const double s = rms_radius(y, cy) / rho_ty;
    Vector out(ty.size());
    for (Eigen::Index i = 0; i < ty.size() / 2; ++i) {
      out.segment<2>(2 * i) = cy + (ty.segment<2>(2 * i) - cty) * s;
    }
    return out;
  };
}

VectorMap make_mesh_operator(const TriMesh& mesh, OperatorKind kind) {
  return kind == OperatorKind::Raw ? mesh_operator(mesh, BoundaryPolicy::Free)
                                   : normalized_mesh_operator(mesh);
}

DenseMatrix numerical_jacobian(const VectorMap& map, const Vector& x, double step) {
  if (!(step > 0.0)) throw InvalidArgument(fmt::format("numerical_jacobian: step must be > 0, got {}", step));
  const double h = step * std::max(1.0, x.cwiseAbs().maxCoeff());
  auto probe = [&](const Vector& p, std::size_t col) {
    Vector y;
    try {
      y = map(p);
    } catch (const Error& e) {
      throw MapUndefined(col, e.what());
    }
    if (!y.allFinite()) throw MapUndefined(col, "non-finite image");
    return y;
  };

  DenseMatrix jac;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    Vector plus = x, minus = x;
    plus[j] += h;
    minus[j] -= h;
    const Vector fp = probe(plus, static_cast<std::size_t>(j));
    const Vector fm = probe(minus, static_cast<std::size_t>(j));
    if (j == 0) jac.resize(fp.size(), x.size());
    // divide by the step actually taken after rounding x_j +- h
    jac.col(j) = (fp - fm) / (plus[j] - minus[j]);
  }
  return jac;
}

Triangle<2> equilateral_triangle(Winding winding) {
  const Point2 apex(0.5, std::sqrt(3.0) / 2.0);
  if (winding == Winding::CounterClockwise) return {Point2(0.0, 0.0), Point2(1.0, 0.0), apex};
  return {Point2(0.0, 0.0), apex, Point2(1.0, 0.0)};
}

DenseMatrix analytic_triangle_jacobian(Winding winding) {
  const Blocks& k = jacobian_blocks();
  const bool ccw = winding == Winding::CounterClockwise;
  const Block a = ccw ? Block(k.a.transpose()) : k.a;
  const Block b = ccw ? Block(k.b.transpose()) : k.b;
  const Block c = ccw ? Block(k.c.transpose()) : k.c;
  DenseMatrix m = DenseMatrix::Zero(6, 6);
  for (Index i = 0; i < 3; ++i) {
    add_block(m, i, i, a);
    add_block(m, i, (i + 1) % 3, b);
    add_block(m, i, (i + 2) % 3, c);
  }
  return m;
}

DenseMatrix simple6_jacobian() {
  const Blocks& k = jacobian_blocks();
  const Block at = k.a.transpose();
  const Block bt = k.b.transpose();
  const Block ct = k.c.transpose();
  DenseMatrix m = DenseMatrix::Zero(14, 14);
  add_block(m, 0, 0, at);
  for (Index v = 1; v <= 6; ++v) {
    const Index next = v % 6 + 1;
    const Index prev = (v + 4) % 6 + 1;
    add_block(m, 0, v, (bt + ct) / 6.0);
    add_block(m, v, v, at);
    add_block(m, v, 0, (bt + ct) / 2.0);
    add_block(m, v, next, bt / 2.0);
    add_block(m, v, prev, ct / 2.0);
  }
  return m;
}

DenseMatrix equilateral_mesh_jacobian(const TriMesh& mesh) {
  constexpr double kEquilateralTol = 1e-9;
  for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
    const double q = edge_ratio(mesh.cell_points(c));
    if (q < 1.0 - kEquilateralTol) throw NotEquilateral(static_cast<Index>(c), q);
  }
  const auto& adj = mesh.adjacency();
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const auto valence = adj.valence(static_cast<Index>(v));
    if (!mesh.boundary_mask()[v] && valence != 6) throw BadValence(static_cast<Index>(v), valence);
  }

  const Blocks& k = jacobian_blocks();
  const Block at = k.a.transpose();
  const Block bt = k.b.transpose();
  const Block ct = k.c.transpose();
  const auto n = static_cast<Eigen::Index>(mesh.vertex_count());
  DenseMatrix m = DenseMatrix::Zero(2 * n, 2 * n);
  for (Index v = 0; v < n; ++v) {
    const auto inc = adj.incident(v);
    const double w = 1.0 / static_cast<double>(inc.size());
    for (const auto& [cell, local] : inc) {
      const auto& tri = mesh.cells()[cell];
      add_block(m, v, v, at * w);
      add_block(m, v, tri[(local + 1) % 3], bt * w);
      add_block(m, v, tri[(local + 2) % 3], ct * w);
    }
  }
  return m;
}

SpectrumReport spectrum(const DenseMatrix& matrix, double unit_tol) {
  if (matrix.rows() != matrix.cols()) {
    throw InvalidArgument(fmt::format("spectrum: matrix is {}x{}, not square", matrix.rows(), matrix.cols()));
  }
  if (matrix.rows() > kMaxSpectrumDimension) {
    throw InvalidArgument(fmt::format("spectrum: dimension {} exceeds {}", matrix.rows(), kMaxSpectrumDimension));
  }
  if (!matrix.allFinite()) throw InvalidArgument("spectrum: matrix has non-finite entries");
  if (!(unit_tol >= 0.0)) throw InvalidArgument("spectrum: unit_tol must be >= 0");

  SpectrumReport r;
  if (matrix.rows() == 0) return r;
  Eigen::EigenSolver<DenseMatrix> solver(matrix, false);
  if (solver.info() != Eigen::Success) throw NoConvergence("spectrum: QR iteration did not converge");
  const auto& ev = solver.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              const double ax = std::abs(x), ay = std::abs(y);
              if (ax != ay) return ax > ay;
              if (x.real() != y.real()) return x.real() > y.real();
              return x.imag() > y.imag();
            });

  bool expanding = false;
  for (const auto& l : r.eigenvalues) {
    const double mod = std::abs(l);
    if (mod > 1.0 + unit_tol) expanding = true;
    if (std::abs(l - 1.0) < unit_tol) {
      ++r.unit_count;
    } else {
      r.max_non_unit_modulus = std::max(r.max_non_unit_modulus, mod);
    }
  }
  if (expanding) {
    r.classification = Classification::Saddle;
  } else if (r.unit_count == 4 && r.max_non_unit_modulus < 1.0 - unit_tol) {
    r.classification = Classification::AttractorOrbit;
  }
  return r;
}

Point2 Similarity::apply(const Point2& p) const { return linear() * p + translation; }

Eigen::Matrix2d Similarity::linear() const {
  Eigen::Matrix2d m;
  const double c = scale * std::cos(angle), s = scale * std::sin(angle);
  m << c, -s, s, c;
  return m;
}

TriMesh apply(const Similarity& g, const TriMesh& mesh) {
  std::vector<Point2> pts;
  pts.reserve(mesh.vertex_count());
  for (const auto& p : mesh.vertices()) pts.push_back(g.apply(p));
  return mesh.with_vertices(std::move(pts));
}

OrbitDistance similarity_distance(std::span<const Point2> a, std::span<const Point2> b) {
  if (a.size() != b.size() || a.empty()) {
    throw IncompatibleMeshes(fmt::format("vertex counts differ or are zero ({} vs {})", a.size(), b.size()));
  }
  using C = std::complex<double>;
  const auto n = static_cast<double>(a.size());
  Point2 ca = Point2::Zero(), cb = Point2::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
  }
  ca /= n;
  cb /= n;

  double na = 0.0, nb = 0.0;
  C cross(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const C za(a[i].x() - ca.x(), a[i].y() - ca.y());
    const C zb(b[i].x() - cb.x(), b[i].y() - cb.y());
    na += std::norm(za);
    nb += std::norm(zb);
    cross += std::conj(za) * zb;
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw IncompatibleMeshes("a configuration collapses to a single point");

  const C gamma = cross / na;
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const C za(a[i].x() - ca.x(), a[i].y() - ca.y());
    const C zb(b[i].x() - cb.x(), b[i].y() - cb.y());
    residual += std::norm(gamma * za - zb);
  }

  OrbitDistance out;
  out.d = std::sqrt(residual / nb);
  out.aligning_similarity.angle = std::arg(gamma);
  out.aligning_similarity.scale = std::abs(gamma);
  const C t = C(cb.x(), cb.y()) - gamma * C(ca.x(), ca.y());
  out.aligning_similarity.translation = Point2(t.real(), t.imag());
  return out;
}

OrbitDistance similarity_distance(const TriMesh& a, const TriMesh& b) {
  if (a.cells() != b.cells()) throw IncompatibleMeshes("meshes have different connectivity");
  return similarity_distance(std::span<const Point2>(a.vertices()), std::span<const Point2>(b.vertices()));
}

SurveyTable spectrum_survey(const SurveySampler& sampler, int count, std::uint64_t seed, double unit_tol) {
  if (count < 0) throw InvalidArgument(fmt::format("spectrum_survey: count must be >= 0, got {}", count));
  SurveyTable table;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    const SurveySample s = sampler(rng);
    DenseMatrix jac;
    try {
      jac = numerical_jacobian(s.map, s.point);
    } catch (const MapUndefined&) {
      ++table.skipped;
      continue;
    }
    const SpectrumReport rep = spectrum(jac, unit_tol);
    SurveyRow row;
    row.quality = s.quality;
    row.unit_count = rep.unit_count;
    for (const auto& l : rep.eigenvalues) row.moduli.push_back(std::abs(l));
    row.frobenius_norm = jac.norm();
    row.spectral_norm = Eigen::JacobiSVD<DenseMatrix>(jac).singularValues()(0);
    table.rows.push_back(std::move(row));
  }
  return table;
}

SurveySampler random_triangle_sampler(double min_quality) {
  if (!(min_quality >= 0.0 && min_quality < 1.0)) {
    throw InvalidArgument(fmt::format("random_triangle_sampler: min_quality must lie in [0, 1), got {}", min_quality));
  }
  return [min_quality](Rng& rng) {
    for (;;) {
      Triangle<2> t;
      for (auto& p : t) {
        p.x() = rng.unit();
        p.y() = rng.unit();
      }
      const Point2 e1 = t[1] - t[0], e2 = t[2] - t[0];
      if (e1.x() * e2.y() - e1.y() * e2.x() < 0.0) std::swap(t[1], t[2]);
      const double q = edge_ratio(t);
      if (q > 0.0 && q >= min_quality) {
        return SurveySample{triangle_operator(), flatten<2>(t), q};
      }
    }
  };
}

SurveySampler simple_mesh_sampler(int n, double noise, OperatorKind kind) {
  const TriMesh base = gen_simple_mesh(n);
  if (!(noise >= 0.0)) throw InvalidArgument("simple_mesh_sampler: noise must be >= 0");
  return [base, noise, kind](Rng& rng) {
    std::vector<Point2> pts = base.vertices();
    for (auto& p : pts) {
      p.x() += rng.uniform(-noise, noise);
      p.y() += rng.uniform(-noise, noise);
    }
    const TriMesh m = base.with_vertices(pts);
    return SurveySample{make_mesh_operator(m, kind), flatten<2>(pts), mean_min_quality(m).mean};
  };
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::AttractorOrbit:
      return "attractor_orbit";
    case Classification::Saddle:
      return "saddle";
    case Classification::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

template Vector flatten<2>(std::span<const Point<2>>);
template Vector flatten<3>(std::span<const Point<3>>);
template std::vector<Point<2>> unflatten<2>(const Vector&);
template std::vector<Point<3>> unflatten<3>(const Vector&);

}  // namespace regmesh
