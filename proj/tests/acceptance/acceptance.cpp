// One line per acceptance criterion: id, PASS/FAIL, elapsed time against the
// limit, and the measured figures. Exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/LU>
#include <fmt/core.h>

#include "regmesh/dynamics.hpp"
#include "regmesh/generators.hpp"
#include "regmesh/geom_core.hpp"
#include "regmesh/quality.hpp"
#include "regmesh/smoother.hpp"

using namespace regmesh;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<Outcome()> check;
};

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double signed_area(const Triangle<2>& t) {
  const Point2 a = t[1] - t[0], b = t[2] - t[0];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

Triangle<2> random_triangle(Rng& rng, double min_q) {
  for (;;) {
    Triangle<2> t;
    for (auto& p : t) p = Point2(rng.unit(), rng.unit());
    if (signed_area(t) < 0.0) std::swap(t[1], t[2]);
    if (edge_ratio(t) >= min_q && signed_area(t) > 1e-6) return t;
  }
}

Similarity random_similarity(Rng& rng) {
  Similarity g;
  g.angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
  g.scale = rng.uniform(0.2, 5.0);
  g.translation = Point2(rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
  return g;
}

double multiset_distance(const std::vector<std::complex<double>>& a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const auto& x : a) {
    auto best = std::min_element(b.begin(), b.end(),
                                 [&](const auto& p, const auto& q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

Outcome triangle_spectrum() {
  const DenseMatrix j = analytic_triangle_jacobian(Winding::Clockwise);
  const SpectrumReport r = spectrum(j);
  double mod_err = 0.0;
  const double expect[] = {1, 1, 1, 1, 0.5, 0.5};
  for (int i = 0; i < 6; ++i) mod_err = std::max(mod_err, std::abs(std::abs(r.eigenvalues[i]) - expect[i]));
  const double arg_err = std::max(std::abs(std::arg(r.eigenvalues[4]) - std::numbers::pi / 3),
                                  std::abs(std::arg(r.eigenvalues[5]) + std::numbers::pi / 3));
  const DenseMatrix num = numerical_jacobian(triangle_operator(), flatten<2>(equilateral_triangle(Winding::Clockwise)));
  const double fd_err = max_abs(num - j);
  return {mod_err <= 1e-10 && arg_err <= 1e-9 && fd_err <= 1e-7,
          fmt::format("modulus err {:.2e}, argument err {:.2e}, numeric vs analytic {:.2e}", mod_err, arg_err, fd_err)};
}

Outcome simple6_spectrum() {
  const SpectrumReport r = spectrum(simple6_jacobian());
  int unit = 0;
  std::vector<std::complex<double>> rest;
  for (const auto& l : r.eigenvalues) {
    if (std::abs(l - 1.0) <= 1e-6)
      ++unit;
    else
      rest.push_back(l);
  }
  int pairs = 0;
  std::vector<bool> used(rest.size(), false);
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (used[i] || rest[i].imag() <= 1e-9) continue;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (!used[k] && k != i && std::abs(rest[k] - std::conj(rest[i])) < 1e-9) {
        used[i] = used[k] = true;
        ++pairs;
        break;
      }
    }
  }
  double lo = INFINITY, hi = 0.0;
  for (const auto& l : rest) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  const bool ok = unit == 4 && rest.size() == 10 && pairs == 5 && std::abs(lo - 0.5774) <= 5e-4 &&
                  std::abs(hi - 0.8780) <= 5e-4;
  return {ok, fmt::format("unit eigenvalues {}, conjugate pairs {}, moduli [{:.5f}, {:.5f}]", unit, pairs, lo, hi)};
}

Outcome elementwise_convergence() {
  Rng rng(2024);
  int max_violations = 0, min_violations = 0, not_converged = 0, worst_iterations = 0;
  for (int n = 0; n < 1000; ++n) {
    const Triangle<2> t = random_triangle(rng, 0.05);
    TriangleIteration<2> it;
    try {
      it = iterate_triangle(t, 1e-8, 200);
    } catch (const MaxIterExceeded<2>& e) {
      ++not_converged;
      it = e.last();
    }
    worst_iterations = std::max(worst_iterations, it.iterations);
    bool max_ok = true, min_ok = true;
    for (std::size_t k = 1; k < it.envelope_history.size(); ++k) {
      max_ok = max_ok && it.envelope_history[k].max < it.envelope_history[k - 1].max;
      min_ok = min_ok && it.envelope_history[k].min > it.envelope_history[k - 1].min;
    }
    max_violations += !max_ok;
    min_violations += !min_ok;
  }
  return {max_violations == 0 && min_violations == 0 && not_converged == 0,
          fmt::format("triangles with a non-decreasing max step {}, with a non-increasing min step {}, "
                      "not converged in 200 steps {}, most steps {}",
                      max_violations, min_violations, not_converged, worst_iterations)};
}

Outcome simple_classification() {
  bool ok = true;
  std::string detail;
  for (int n : {4, 6, 7, 8, 9, 10, 11, 12}) {
    const TriMesh m = gen_simple_mesh(n);
    const SpectrumReport r = spectrum(numerical_jacobian(normalized_mesh_operator(m), flatten<2>(m.vertices())));
    const Classification want = n == 4 ? Classification::Saddle : Classification::AttractorOrbit;
    ok = ok && r.classification == want;
    detail += fmt::format("{}N={} {} ({:.4f}){}", detail.empty() ? "" : ", ", n, to_string(r.classification),
                          r.max_non_unit_modulus, r.classification == want ? "" : " UNEXPECTED");
  }
  return {ok, detail};
}

Outcome local_rate() {
  const TriMesh reg = gen_simple_mesh(7);
  Rng rng(5);
  std::vector<Point2> pts = reg.vertices();
  for (auto& p : pts) p += Point2(rng.uniform(-1e-3, 1e-3), rng.uniform(-1e-3, 1e-3));
  TriMesh m = reg.with_vertices(pts);
  SmoothOptions o;
  o.boundary_policy = BoundaryPolicy::Free;
  std::vector<double> d = {similarity_distance(m, reg).d};
  for (int it = 1; it <= 20; ++it) {
    m = smooth_step_tri(m, o);
    d.push_back(similarity_distance(m, reg).d);
  }
  bool decreasing = true;
  double worst_step = 0.0;
  for (int it = 6; it <= 20; ++it) {
    decreasing = decreasing && d[it] < d[it - 1];
    worst_step = std::max(worst_step, d[it] / d[it - 1]);
  }
  const double rate = std::pow(d[20] / d[5], 1.0 / 15.0);
  return {decreasing && rate <= 0.90,
          fmt::format("d0 {:.3e}, d5 {:.3e}, d20 {:.3e}, mean ratio {:.4f}, worst single ratio {:.4f}", d[0], d[5],
                      d[20], rate, worst_step)};
}

Outcome smoothing_trend() {
  SmoothOptions o;
  o.max_iterations = 10;
  o.displacement_tol = 0.0;

  const auto grid = run(gen_grid_mesh(16, 0.3, 42), o);
  const auto& gh = grid.report.quality_history;
  bool grid_monotone = gh.size() == 11;
  for (std::size_t i = 1; i < gh.size(); ++i) grid_monotone = grid_monotone && gh[i].mean >= gh[i - 1].mean;
  const double grid_gain = gh.back().mean - gh.front().mean;
  const bool grid_ok = grid_monotone && grid_gain >= 0.05 && validate(grid.mesh).is_valid;

  const TetMesh cube0 = gen_cube_tet_mesh(8, 0.25, 7);
  const auto cube = run(cube0, o);
  const auto& ch = cube.report.quality_history;
  bool cube_monotone = ch.size() == 11;
  for (std::size_t i = 1; i < ch.size(); ++i) cube_monotone = cube_monotone && ch[i].mean > ch[i - 1].mean;
  const double cube_gain = ch.back().mean - ch.front().mean;
  const auto cube_valid = validate(cube.mesh);
  const bool cube_ok = cube_monotone && cube_gain >= 0.05 && cube_valid.inverted_cells.empty();

  SmoothOptions free = o;
  free.boundary_policy = BoundaryPolicy::Free;
  const auto cube_free = run(cube0, free);
  const double free_gain = cube_free.report.quality_history.back().mean - ch.front().mean;

  return {grid_ok && cube_ok,
          fmt::format("grid {:.5f} -> {:.5f} (+{:.4f}, monotone {}); cube {:.5f} -> {:.5f} (+{:.4f}, monotone {}, "
                      "inverted {}); for reference, the cube with a free boundary gains +{:.4f}",
                      gh.front().mean, gh.back().mean, grid_gain, grid_monotone, ch.front().mean, ch.back().mean,
                      cube_gain, cube_monotone, cube_valid.inverted_cells.size(), free_gain)};
}

Outcome polygon_counterexample() {
  const Polygon kite = {Point2(2, 0), Point2(0, 1), Point2(-2, 0), Point2(0, -1)};
  const Polygon q1 = transform_polygon(kite);
  const Polygon q2 = transform_polygon(q1);
  double d1 = 0.0, d2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    d1 = std::max(d1, (q1[i] - kite[i]).cwiseAbs().maxCoeff());
    d2 = std::max(d2, (q2[i] - kite[i]).cwiseAbs().maxCoeff());
  }
  return {d2 < 1e-12 && d1 > 1e-3, fmt::format("|Q2 - Q0| = {:.2e}, |Q1 - Q0| = {:.4f}", d2, d1)};
}

Outcome equivariance() {
  Rng rng(808);
  double worst_commute = 0.0, worst_spectrum = 0.0;
  for (int n = 0; n < 100; ++n) {
    const TriMesh m = gen_grid_mesh(2 + n % 3, 0.35, 1000 + n);
    const Similarity g = random_similarity(rng);
    const TriMesh gm = apply(g, m);
    const auto lhs = transform_positions<2>(gm, gm.vertices(), BoundaryPolicy::Free);
    const auto rhs = transform_positions<2>(m, m.vertices(), BoundaryPolicy::Free);
    double diff = 0.0;
    for (std::size_t v = 0; v < lhs.size(); ++v) diff = std::max(diff, (lhs[v] - g.apply(rhs[v])).norm());
    worst_commute = std::max(worst_commute, diff / gm.bbox_diagonal());

    const auto sm = spectrum(numerical_jacobian(mesh_operator(m), flatten<2>(m.vertices())));
    const auto sg = spectrum(numerical_jacobian(mesh_operator(gm), flatten<2>(gm.vertices())));
    worst_spectrum = std::max(worst_spectrum, multiset_distance(sm.eigenvalues, sg.eigenvalues));
  }
  return {worst_commute <= 1e-10 && worst_spectrum <= 1e-7,
          fmt::format("worst relative commutation error {:.2e}, worst eigenvalue mismatch {:.2e}", worst_commute,
                      worst_spectrum)};
}

Outcome oracle_equivalence() {
  Rng rng(99);
  double worst_path = 0.0;
  SmoothOptions o;
  o.boundary_policy = BoundaryPolicy::Free;
  for (int n = 0; n < 20; ++n) {
    Triangle<2> t = random_triangle(rng, 0.05);
    TriMesh m = TriMesh::build({t[0], t[1], t[2]}, {{0, 1, 2}});
    for (int step = 0; step < 50; ++step) {
      m = smooth_step_tri(m, o);
      t = transform_triangle(t);
      for (int i = 0; i < 3; ++i) worst_path = std::max(worst_path, (m.vertices()[i] - t[i]).norm());
    }
  }

  double worst_eig = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    DenseMatrix d = DenseMatrix::Zero(14, 14);
    std::vector<std::complex<double>> expect;
    for (int k = 0; k < 14;) {
      if (k < 12 && rng.unit() < 0.5) {
        const double r = rng.uniform(0.1, 2.0), a = rng.uniform(0.1, 3.0);
        d(k, k) = d(k + 1, k + 1) = r * std::cos(a);
        d(k, k + 1) = -r * std::sin(a);
        d(k + 1, k) = r * std::sin(a);
        expect.push_back(std::polar(r, a));
        expect.push_back(std::polar(r, -a));
        k += 2;
      } else {
        d(k, k) = rng.uniform(-2.0, 2.0);
        expect.emplace_back(d(k, k), 0.0);
        ++k;
      }
    }
    DenseMatrix q(14, 14);
    for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = rng.uniform(-1.0, 1.0);
    q += 4.0 * DenseMatrix::Identity(14, 14);
    worst_eig = std::max(worst_eig, multiset_distance(spectrum(q * d * q.inverse()).eigenvalues, expect));
  }
  return {worst_path <= 1e-12 && worst_eig <= 1e-9,
          fmt::format("mesh vs element path {:.2e} over 20 x 50 steps, eigenvalue recovery {:.2e}", worst_path,
                      worst_eig)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "triangle Jacobian spectrum", 1.0, triangle_spectrum},
      {2, "six-simple mesh spectrum", 1.0, simple6_spectrum},
      {3, "elementwise convergence", 5.0, elementwise_convergence},
      {4, "N-simple classification", 10.0, simple_classification},
      {5, "local convergence rate", 1.0, local_rate},
      {6, "mesh smoothing trend", 30.0, smoothing_trend},
      {7, "polygon counterexample", 1.0, polygon_counterexample},
      {8, "equivariance", 10.0, equivariance},
      {9, "oracle equivalence", 5.0, oracle_equivalence},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && secs < c.limit_s;
    failed += !pass;
    fmt::print("AC{} {} {} [{:.3f} s, limit {:g} s] {}\n", c.id, pass ? "PASS" : "FAIL", c.title, secs, c.limit_s,
               out.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
