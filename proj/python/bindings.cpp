#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "regmesh/dynamics.hpp"
#include "regmesh/generators.hpp"
#include "regmesh/geom_core.hpp"
#include "regmesh/mesh_io.hpp"
#include "regmesh/quality.hpp"
#include "regmesh/smoother.hpp"

namespace py = pybind11;
using namespace regmesh;

namespace {

template <int Dim>
using PointRows = Eigen::Matrix<double, Eigen::Dynamic, Dim, Eigen::RowMajor>;
template <int Dim>
using CellRows = Eigen::Matrix<Index, Eigen::Dynamic, Dim + 1, Eigen::RowMajor>;

template <int Dim>
std::vector<Point<Dim>> to_points(const PointRows<Dim>& rows) {
  std::vector<Point<Dim>> pts(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) pts[i] = rows.row(i).transpose();
  return pts;
}

template <int Dim>
PointRows<Dim> from_points(std::span<const Point<Dim>> pts) {
  PointRows<Dim> rows(static_cast<Eigen::Index>(pts.size()), Dim);
  for (std::size_t i = 0; i < pts.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
  return rows;
}

template <int Dim>
Triangle<Dim> to_triangle(const PointRows<Dim>& rows) {
  if (rows.rows() != 3) throw InvalidArgument("a triangle needs exactly 3 rows");
  return {rows.row(0).transpose(), rows.row(1).transpose(), rows.row(2).transpose()};
}

template <int Dim>
void bind_mesh(py::module_& m, const char* name) {
  using M = Mesh<Dim>;
  py::class_<M>(m, name)
      .def(py::init([](const PointRows<Dim>& vertices, const CellRows<Dim>& cells,
                       std::optional<std::vector<bool>> boundary) {
             std::vector<Cell<Dim>> cs(static_cast<std::size_t>(cells.rows()));
             for (Eigen::Index i = 0; i < cells.rows(); ++i)
               for (int j = 0; j <= Dim; ++j) cs[i][j] = cells(i, j);
             return M::build(to_points<Dim>(vertices), std::move(cs), std::move(boundary));
           }),
           py::arg("vertices"), py::arg("cells"), py::arg("boundary") = py::none())
      .def_property_readonly("vertices", [](const M& self) { return from_points<Dim>(self.vertices()); })
      .def_property_readonly("cells",
                             [](const M& self) {
                               CellRows<Dim> rows(static_cast<Eigen::Index>(self.cell_count()), Dim + 1);
                               for (std::size_t i = 0; i < self.cell_count(); ++i)
                                 for (int j = 0; j <= Dim; ++j) rows(i, j) = self.cells()[i][j];
                               return rows;
                             })
      .def_property_readonly("boundary_mask", &M::boundary_mask)
      .def_property_readonly("vertex_count", &M::vertex_count)
      .def_property_readonly("cell_count", &M::cell_count)
      .def("valence", [](const M& self, Index v) { return self.adjacency().valence(v); })
      .def("with_vertices",
           [](const M& self, const PointRows<Dim>& v) {
             if (static_cast<std::size_t>(v.rows()) != self.vertex_count())
               throw InvalidArgument("with_vertices: vertex count differs from the mesh");
             return self.with_vertices(to_points<Dim>(v));
           })
      .def("validate", &validate<Dim>, py::arg("check_overlaps") = false)
      .def("quality", &mesh_quality<Dim>, py::arg("bins") = kDefaultQualityBins)
      .def("serialize", [](const M& self) { return serialize_mesh(self); })
      .def("write", [](const M& self, const std::filesystem::path& p) { write_mesh_file(p, self); })
      .def("__eq__", &M::operator==)
      .def("__repr__", [name](const M& self) {
        return std::string("<") + name + " vertices=" + std::to_string(self.vertex_count()) +
               " cells=" + std::to_string(self.cell_count()) + ">";
      });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mesh smoothing by the geometric element transformation";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<NearCentroidVertex>(m, "NearCentroidVertex", error.ptr());
  py::register_exception<DisconnectedConnectivity>(m, "DisconnectedConnectivity", error.ptr());
  py::register_exception<InvertedCell>(m, "InvertedCell", error.ptr());
  py::register_exception<DuplicateVertex>(m, "DuplicateVertex", error.ptr());
  py::register_exception<TooFewSymbols>(m, "TooFewSymbols", error.ptr());
  py::register_exception<InvertedMeshAfterStep>(m, "InvertedMeshAfterStep", error.ptr());
  py::register_exception<DegenerateElement>(m, "DegenerateElement", error.ptr());
  py::register_exception<MapUndefined>(m, "MapUndefined", error.ptr());
  py::register_exception<NotEquilateral>(m, "NotEquilateral", error.ptr());
  py::register_exception<BadValence>(m, "BadValence", error.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", error.ptr());
  py::register_exception<IncompatibleMeshes>(m, "IncompatibleMeshes", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", error.ptr());
  py::register_exception<MaxIterExceeded<2>>(m, "MaxIterExceeded", error.ptr());

  // element transformation
  m.def("transform_triangle",
        [](const PointRows<2>& t) {
          const auto out = transform_triangle(to_triangle<2>(t));
          return from_points<2>(out);
        },
        py::arg("triangle"));
  m.def("radius_ratios", [](const PointRows<2>& pts) { return radius_ratios<2>(to_points<2>(pts)).values; },
        py::arg("points"));
  m.def("transform_polygon",
        [](const PointRows<2>& p) {
          const auto out = transform_polygon(to_points<2>(p));
          return from_points<2>(out);
        },
        py::arg("polygon"));
  m.def("iterate_triangle",
        [](const PointRows<2>& t, double tol, int max_iter) {
          const auto it = iterate_triangle(to_triangle<2>(t), tol, max_iter);
          std::vector<std::vector<double>> ratios;
          for (const auto& r : it.ratio_history) ratios.push_back(r.values);
          return py::make_tuple(from_points<2>(it.triangle), it.iterations, ratios);
        },
        py::arg("triangle"), py::arg("tol") = 1e-10, py::arg("max_iter") = 1000);

  // meshes
  py::class_<ValidityReport>(m, "ValidityReport")
      .def_readonly("is_valid", &ValidityReport::is_valid)
      .def_readonly("inverted_cells", &ValidityReport::inverted_cells)
      .def_readonly("degenerate_cells", &ValidityReport::degenerate_cells)
      .def_readonly("overlapping_pairs", &ValidityReport::overlapping_pairs)
      .def_readonly("min_distortion", &ValidityReport::min_distortion);
  py::class_<QualityHistogram>(m, "QualityHistogram")
      .def_readonly("bin_edges", &QualityHistogram::bin_edges)
      .def_readonly("counts", &QualityHistogram::counts)
      .def_readonly("per_cell", &QualityHistogram::per_cell)
      .def_readonly("mean", &QualityHistogram::mean)
      .def_readonly("min", &QualityHistogram::min);
  bind_mesh<2>(m, "TriMesh");
  bind_mesh<3>(m, "TetMesh");

  m.def("gen_simple_mesh", &gen_simple_mesh, py::arg("n"));
  m.def("gen_grid_mesh", &gen_grid_mesh, py::arg("n"), py::arg("jitter") = 0.0, py::arg("seed") = 0);
  m.def("gen_cube_tet_mesh", &gen_cube_tet_mesh, py::arg("n"), py::arg("jitter") = 0.0, py::arg("seed") = 0);
  m.def("gen_hex_patch", &gen_hex_patch, py::arg("rings"));
  m.def("gen_regular_bipyramid", &gen_regular_bipyramid);

  m.def("tri_quality", [](const PointRows<2>& t) { return tri_quality(to_triangle<2>(t)); }, py::arg("triangle"));
  m.def("tet_mean_ratio",
        [](const PointRows<3>& t) {
          if (t.rows() != 4) throw InvalidArgument("a tetrahedron needs exactly 4 rows");
          return tet_mean_ratio({t.row(0).transpose(), t.row(1).transpose(), t.row(2).transpose(),
                                 t.row(3).transpose()});
        },
        py::arg("tet"));

  // smoothing
  py::enum_<BoundaryPolicy>(m, "BoundaryPolicy")
      .value("FIXED", BoundaryPolicy::Fixed)
      .value("FREE", BoundaryPolicy::Free);
  py::enum_<InversionPolicy>(m, "InversionPolicy")
      .value("ABORT", InversionPolicy::Abort)
      .value("REVERT_STEP", InversionPolicy::RevertStep)
      .value("ACCEPT", InversionPolicy::Accept);
  py::enum_<Termination>(m, "Termination")
      .value("TOLERANCE", Termination::Tolerance)
      .value("MAX_ITER", Termination::MaxIter)
      .value("INVERSION", Termination::Inversion);
  py::class_<SmoothOptions>(m, "SmoothOptions")
      .def(py::init([](BoundaryPolicy b, int iters, double tol, InversionPolicy inv, bool history) {
             SmoothOptions o{b, iters, tol, inv, history};
             o.check();
             return o;
           }),
           py::arg("boundary_policy") = BoundaryPolicy::Fixed, py::arg("max_iterations") = 100,
           py::arg("displacement_tol") = 1e-8, py::arg("on_inversion") = InversionPolicy::Abort,
           py::arg("record_history") = true)
      .def_readwrite("boundary_policy", &SmoothOptions::boundary_policy)
      .def_readwrite("max_iterations", &SmoothOptions::max_iterations)
      .def_readwrite("displacement_tol", &SmoothOptions::displacement_tol)
      .def_readwrite("on_inversion", &SmoothOptions::on_inversion)
      .def_readwrite("record_history", &SmoothOptions::record_history);
  py::class_<SmoothReport>(m, "SmoothReport")
      .def_readonly("iterations_run", &SmoothReport::iterations_run)
      .def_property_readonly("mean_quality",
                             [](const SmoothReport& r) {
                               std::vector<double> v;
                               for (const auto& s : r.quality_history) v.push_back(s.mean);
                               return v;
                             })
      .def_property_readonly("min_quality",
                             [](const SmoothReport& r) {
                               std::vector<double> v;
                               for (const auto& s : r.quality_history) v.push_back(s.min);
                               return v;
                             })
      .def_readonly("displacement_history", &SmoothReport::displacement_history)
      .def_readonly("terminated_by", &SmoothReport::terminated_by);

  m.def("smooth_step", &smooth_step_tri, py::arg("mesh"), py::arg("options") = SmoothOptions{});
  m.def("smooth_step", &smooth_step_tet, py::arg("mesh"), py::arg("options") = SmoothOptions{});
  m.def("run",
        [](const TriMesh& mesh, const SmoothOptions& o) {
          auto r = run(mesh, o);
          return py::make_tuple(std::move(r.mesh), std::move(r.report));
        },
        py::arg("mesh"), py::arg("options") = SmoothOptions{});
  m.def("run",
        [](const TetMesh& mesh, const SmoothOptions& o) {
          auto r = run(mesh, o);
          return py::make_tuple(std::move(r.mesh), std::move(r.report));
        },
        py::arg("mesh"), py::arg("options") = SmoothOptions{});

  // dynamics
  py::enum_<Classification>(m, "Classification")
      .value("ATTRACTOR_ORBIT", Classification::AttractorOrbit)
      .value("SADDLE", Classification::Saddle)
      .value("INCONCLUSIVE", Classification::Inconclusive);
  py::enum_<Winding>(m, "Winding")
      .value("CLOCKWISE", Winding::Clockwise)
      .value("COUNTER_CLOCKWISE", Winding::CounterClockwise);
  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("eigenvalues", &SpectrumReport::eigenvalues)
      .def_readonly("unit_count", &SpectrumReport::unit_count)
      .def_readonly("max_non_unit_modulus", &SpectrumReport::max_non_unit_modulus)
      .def_readonly("classification", &SpectrumReport::classification);

  m.def("analytic_triangle_jacobian", &analytic_triangle_jacobian, py::arg("winding") = Winding::Clockwise);
  m.def("simple6_jacobian", &simple6_jacobian);
  m.def("equilateral_mesh_jacobian", &equilateral_mesh_jacobian, py::arg("mesh"));
  m.def("triangle_jacobian",
        [](const PointRows<2>& t, double step) {
          return numerical_jacobian(triangle_operator(), flatten<2>(to_points<2>(t)), step);
        },
        py::arg("triangle"), py::arg("step") = kDefaultJacobianStep);
  m.def("mesh_jacobian",
        [](const TriMesh& mesh, bool normalized, double step) {
          const auto op = make_mesh_operator(mesh, normalized ? OperatorKind::Normalized : OperatorKind::Raw);
          return numerical_jacobian(op, flatten<2>(mesh.vertices()), step);
        },
        py::arg("mesh"), py::arg("normalized") = false, py::arg("step") = kDefaultJacobianStep);
  m.def("spectrum", &spectrum, py::arg("matrix"), py::arg("unit_tol") = kDefaultUnitTol);
  m.def("similarity_distance",
        [](const TriMesh& a, const TriMesh& b) {
          const auto r = similarity_distance(a, b);
          const auto& g = r.aligning_similarity;
          return py::make_tuple(r.d, g.angle, g.scale, g.translation);
        },
        py::arg("a"), py::arg("b"));

  // files
  const auto to_python = [](const AnyMesh& mesh) {
    return std::visit([](const auto& v) -> py::object { return py::cast(v); }, mesh);
  };
  m.def("parse_mesh", [to_python](std::string_view text) { return to_python(parse_mesh(text)); }, py::arg("text"));
  m.def("read_mesh", [to_python](const std::filesystem::path& p) { return to_python(read_mesh_file(p)); },
        py::arg("path"));
}
