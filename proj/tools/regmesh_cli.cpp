// regmesh command-line front end.
//
// Exit codes: 0 success, 2 invalid input or arguments, 3 a smoothing step
// inverted a cell under --on-inversion abort, 1 anything else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iterator>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "regmesh/dynamics.hpp"
#include "regmesh/errors.hpp"
#include "regmesh/generators.hpp"
#include "regmesh/geom_core.hpp"
#include "regmesh/mesh_io.hpp"
#include "regmesh/quality.hpp"
#include "regmesh/random.hpp"
#include "regmesh/smoother.hpp"

namespace {

using namespace regmesh;
namespace fs = std::filesystem;

constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInverted = 3;

void emit(const std::optional<fs::path>& path, const std::string& text) {
  if (path) {
    write_text_file(*path, text);
  } else {
    std::fwrite(text.data(), 1, text.size(), stdout);
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvertedMeshAfterStep*>(&e)) return kExitInverted;
  const bool invalid = dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const ParseError*>(&e) ||
                       dynamic_cast<const IndexOutOfRange*>(&e) ||
                       dynamic_cast<const DisconnectedConnectivity*>(&e) ||
                       dynamic_cast<const InvertedCell*>(&e) || dynamic_cast<const DuplicateVertex*>(&e) ||
                       dynamic_cast<const TooFewSymbols*>(&e) || dynamic_cast<const NotEquilateral*>(&e) ||
                       dynamic_cast<const BadValence*>(&e) || dynamic_cast<const DegenerateElement*>(&e);
  return invalid ? kExitInvalid : kExitFailure;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  int n = 0;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  fs::path out;
};

void run_generate(const GenerateArgs& a) {
  if (a.kind == "grid") {
    write_mesh_file(a.out, gen_grid_mesh(a.n, a.jitter, a.seed));
  } else if (a.kind == "cube") {
    write_mesh_file(a.out, gen_cube_tet_mesh(a.n, a.jitter, a.seed));
  } else {
    write_mesh_file(a.out, gen_simple_mesh(a.n));
  }
}

// ---- smooth ---------------------------------------------------------------

struct SmoothArgs {
  fs::path in, out;
  int iters = 100;
  double tol = 1e-8;
  std::string boundary = "fixed";
  std::string on_inversion = "abort";
  std::optional<fs::path> history;
};

std::string history_csv(const SmoothReport& r) {
  std::string out = "iter,mean_q,min_q,max_disp\n";
  auto it = std::back_inserter(out);
  for (std::size_t i = 0; i < r.quality_history.size(); ++i) {
    fmt::format_to(it, "{},{},{},{}\n", i, r.quality_history[i].mean, r.quality_history[i].min,
                   r.displacement_history[i]);
  }
  return out;
}

void run_smooth(const SmoothArgs& a) {
  SmoothOptions opts;
  opts.boundary_policy = a.boundary == "free" ? BoundaryPolicy::Free : BoundaryPolicy::Fixed;
  opts.max_iterations = a.iters;
  opts.displacement_tol = a.tol;
  opts.on_inversion = a.on_inversion == "revert"   ? InversionPolicy::RevertStep
                      : a.on_inversion == "accept" ? InversionPolicy::Accept
                                                   : InversionPolicy::Abort;
  opts.check();
  const AnyMesh input = read_mesh_file(a.in);
  std::visit(
      [&](const auto& mesh) {
        const auto result = run(mesh, opts);
        write_mesh_file(a.out, result.mesh);
        if (a.history) write_text_file(*a.history, history_csv(result.report));
        const auto& last = result.report.quality_history.back();
        fmt::print("iterations={} terminated_by={} mean_q={} min_q={}\n", result.report.iterations_run,
                   to_string(result.report.terminated_by), last.mean, last.min);
        if (result.report.terminated_by == Termination::Inversion) {
          fmt::print(stderr, "warning: step {} inverted a cell; kept the previous mesh\n",
                     result.report.iterations_run + 1);
        }
      },
      input);
}

// ---- quality --------------------------------------------------------------

struct QualityArgs {
  fs::path in;
  int bins = kDefaultQualityBins;
  std::optional<fs::path> csv;
};

std::string quality_csv(const QualityHistogram& h) {
  std::string out = "kind,index,q,lo,hi,count\n";
  auto it = std::back_inserter(out);
  for (std::size_t c = 0; c < h.per_cell.size(); ++c) fmt::format_to(it, "cell,{},{},,,\n", c, h.per_cell[c]);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    fmt::format_to(it, "bin,{},,{},{},{}\n", b, h.bin_edges[b], h.bin_edges[b + 1], h.counts[b]);
  }
  return out;
}

void run_quality(const QualityArgs& a) {
  const AnyMesh input = read_mesh_file(a.in);
  const QualityHistogram h = std::visit([&](const auto& m) { return mesh_quality(m, a.bins); }, input);
  fmt::print("mean={} min={}\n", h.mean, h.min);
  if (a.csv) write_text_file(*a.csv, quality_csv(h));
}

// ---- spectrum -------------------------------------------------------------

struct SpectrumArgs {
  std::string kind;
  std::optional<int> n;
  std::optional<fs::path> in;
  bool numeric = false;
  bool analytic = false;
  std::string op = "normalized";
  double unit_tol = kDefaultUnitTol;
  std::optional<fs::path> csv;
};

DenseMatrix mesh_jacobian(const TriMesh& mesh, const SpectrumArgs& a) {
  if (a.analytic) return equilateral_mesh_jacobian(mesh);
  return numerical_jacobian(make_mesh_operator(mesh, a.op == "raw" ? OperatorKind::Raw : OperatorKind::Normalized), flatten<2>(mesh.vertices()));
}

void run_spectrum(const SpectrumArgs& a) {
  DenseMatrix jac;
  if (a.kind == "triangle") {
    jac = a.analytic ? analytic_triangle_jacobian()
                     : numerical_jacobian(triangle_operator(), flatten<2>(equilateral_triangle(Winding::Clockwise)));
  } else if (a.kind == "simple6") {
    jac = a.analytic ? simple6_jacobian() : mesh_jacobian(gen_simple_mesh(7), a);
  } else if (a.kind == "simple") {
    if (!a.n) throw InvalidArgument("--case simple requires --n");
    jac = mesh_jacobian(gen_simple_mesh(*a.n), a);
  } else {
    if (!a.in) throw InvalidArgument("--case mesh requires --in");
    const AnyMesh m = read_mesh_file(*a.in);
    if (!std::holds_alternative<TriMesh>(m)) throw InvalidArgument("spectrum needs a planar triangle mesh");
    jac = mesh_jacobian(std::get<TriMesh>(m), a);
  }
  const SpectrumReport r = spectrum(jac, a.unit_tol);
  std::string out = "re,im,modulus\n";
  auto it = std::back_inserter(out);
  for (const auto& l : r.eigenvalues) fmt::format_to(it, "{},{},{}\n", l.real(), l.imag(), std::abs(l));
  if (a.csv) {
    write_text_file(*a.csv, out);
    fmt::print("dimension={} unit_count={} max_non_unit_modulus={} classification={}\n", jac.rows(),
               r.unit_count, r.max_non_unit_modulus, to_string(r.classification));
  } else {
    emit(std::nullopt, out);
  }
}

// ---- polygon-demo ---------------------------------------------------------

struct PolygonArgs {
  int k = 4;
  int iters = 10;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> csv;
};

// k points on the ellipse x^2/4 + y^2 = 1; equally spaced in angle unless a
// seed asks for random (sorted) angles. k = 4 without a seed is the kite
// (2,0), (0,1), (-2,0), (0,-1).
Polygon initial_polygon(const PolygonArgs& a) {
  std::vector<double> angles(a.k);
  if (a.seed) {
    Rng rng(*a.seed);
    for (auto& t : angles) t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::sort(angles.begin(), angles.end());
  } else {
    for (int i = 0; i < a.k; ++i) angles[i] = 2.0 * std::numbers::pi * i / a.k;
  }
  Polygon p;
  for (double t : angles) {
    double c = std::cos(t), s = std::sin(t);
    if (std::abs(c) < 1e-15) c = 0.0;
    if (std::abs(s) < 1e-15) s = 0.0;
    p.emplace_back(2.0 * c, s);
  }
  return p;
}

void run_polygon(const PolygonArgs& a) {
  if (a.k < 3) throw InvalidArgument(fmt::format("--k must be >= 3, got {}", a.k));
  if (a.iters < 0) throw InvalidArgument(fmt::format("--iters must be >= 0, got {}", a.iters));
  Polygon p = initial_polygon(a);
  std::string out = "iter,vertex,x,y\n";
  auto it = std::back_inserter(out);
  for (int n = 0; n <= a.iters; ++n) {
    if (n > 0) p = transform_polygon(p);
    for (std::size_t i = 0; i < p.size(); ++i) fmt::format_to(it, "{},{},{},{}\n", n, i, p[i].x(), p[i].y());
  }
  emit(a.csv, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesh smoothing by the geometric element transformation, plus fixed-point dynamics tools"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Write a generated mesh");
  cmd_gen->add_option("--kind", gen.kind, "grid, cube or simple")
      ->required()
      ->check(CLI::IsMember({"grid", "cube", "simple"}));
  cmd_gen->add_option("--n", gen.n, "Subdivisions per side (grid, cube) or number of vertices (simple)")->required();
  cmd_gen->add_option("--jitter", gen.jitter, "Interior vertex noise relative to the spacing")->capture_default_str();
  cmd_gen->add_option("--seed", gen.seed, "Noise seed")->capture_default_str();
  cmd_gen->add_option("--out", gen.out, "Output mesh file")->required();

  SmoothArgs sm;
  auto* cmd_smooth = app.add_subcommand("smooth", "Smooth a mesh file");
  cmd_smooth->add_option("--in", sm.in, "Input mesh file")->required()->check(CLI::ExistingFile);
  cmd_smooth->add_option("--out", sm.out, "Output mesh file")->required();
  cmd_smooth->add_option("--iters", sm.iters, "Maximum number of steps")->capture_default_str();
  cmd_smooth->add_option("--tol", sm.tol, "Stop when the largest move is below tol * bbox diagonal")
      ->capture_default_str();
  cmd_smooth->add_option("--boundary", sm.boundary, "fixed or free")
      ->check(CLI::IsMember({"fixed", "free"}))
      ->capture_default_str();
  cmd_smooth->add_option("--on-inversion", sm.on_inversion, "abort, revert or accept")
      ->check(CLI::IsMember({"abort", "revert", "accept"}))
      ->capture_default_str();
  cmd_smooth->add_option("--history", sm.history, "Per-iteration quality CSV");

  QualityArgs qa;
  auto* cmd_quality = app.add_subcommand("quality", "Report element quality");
  cmd_quality->add_option("--in", qa.in, "Input mesh file")->required()->check(CLI::ExistingFile);
  cmd_quality->add_option("--bins", qa.bins, "Histogram bins on (0, 1]")->capture_default_str();
  cmd_quality->add_option("--csv", qa.csv, "Per-cell values and histogram");

  SpectrumArgs sp;
  auto* cmd_spec = app.add_subcommand("spectrum", "Eigenvalues of a Jacobian at a configuration");
  cmd_spec->add_option("--case", sp.kind, "triangle, simple6, simple or mesh")
      ->required()
      ->check(CLI::IsMember({"triangle", "simple6", "simple", "mesh"}));
  cmd_spec->add_option("--n", sp.n, "Number of vertices for --case simple");
  cmd_spec->add_option("--in", sp.in, "Mesh file for --case mesh")->check(CLI::ExistingFile);
  auto* f_num = cmd_spec->add_flag("--numeric", sp.numeric, "Central-difference Jacobian (default)");
  auto* f_ana = cmd_spec->add_flag("--analytic", sp.analytic, "Closed-form Jacobian at equilateral meshes");
  f_num->excludes(f_ana);
  cmd_spec->add_option("--operator", sp.op, "Mesh operator for --numeric: raw or normalized")
      ->check(CLI::IsMember({"raw", "normalized"}))
      ->capture_default_str();
  cmd_spec->add_option("--unit-tol", sp.unit_tol, "Tolerance for counting unit eigenvalues")
      ->capture_default_str();
  cmd_spec->add_option("--csv", sp.csv, "Eigenvalue CSV (stdout if omitted)");

  PolygonArgs pa;
  auto* cmd_poly = app.add_subcommand("polygon-demo", "Vertex trajectories of the k-gon transformation");
  cmd_poly->add_option("--k", pa.k, "Number of vertices")->capture_default_str();
  cmd_poly->add_option("--iters", pa.iters, "Number of transformations")->capture_default_str();
  cmd_poly->add_option("--seed", pa.seed, "Random vertex angles on the ellipse");
  cmd_poly->add_option("--csv", pa.csv, "Trajectory CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*cmd_gen) run_generate(gen);
    if (*cmd_smooth) run_smooth(sm);
    if (*cmd_quality) run_quality(qa);
    if (*cmd_spec) run_spectrum(sp);
    if (*cmd_poly) run_polygon(pa);
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code_for(e);
  }
  return 0;
}
