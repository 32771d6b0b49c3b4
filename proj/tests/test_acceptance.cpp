// Acceptance gate: eight go/no-go checks covering the convergence behavior,
// the error magnitudes, and the structural properties of the scheme. Each
// criterion prints one [PASS]/[FAIL] line with the measured numbers; the exit
// code is the number of failed criteria.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pdwg/analysis.hpp"
#include "pdwg/assembly.hpp"
#include "pdwg/basis.hpp"
#include "pdwg/cases.hpp"
#include "pdwg/linsolve.hpp"
#include "pdwg/mesh.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/runner.hpp"
#include "pdwg/weakcalc.hpp"

using namespace pdwg;

namespace {

int n_failed = 0;

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++n_failed;
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

/// Convergence tables over levels 0..5, cached so criteria can share runs.
const ConvergenceResult& table_for(const std::string& case_id, int k, double tau1,
                                   double tau2) {
  static std::map<std::string, ConvergenceResult> cache;
  const std::string key = fmt("%s/%d/%g/%g", case_id.c_str(), k, tau1, tau2);
  auto it = cache.find(key);
  if (it == cache.end()) {
    RunConfig cfg;
    cfg.case_id = case_id;
    cfg.k = k;
    cfg.tau1 = tau1;
    cfg.tau2 = tau2;
    cfg.levels = {0, 1, 2, 3, 4, 5};
    it = cache.emplace(key, run_convergence(cfg)).first;
  }
  return it->second;
}

bool in_window(double v, double lo, double hi) { return v >= lo && v <= hi; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const RateTable& table = table_for("c1_tri_sq", 1, 0.0, 0.0).table;
  const double elapsed = seconds_since(t0);
  const RateRow& last = table.back();
  const bool ok = in_window(last.rate_e0, 1.85, 2.35) &&
                  in_window(last.rate_eb, 1.85, 2.35) && elapsed <= 30.0;
  report(1, ok,
         fmt("k=1 triangles, tau=(0,0): final rates e0=%.4f eb=%.4f in [1.85,2.35], "
             "%.2f s <= 30 s",
             last.rate_e0, last.rate_eb, elapsed));
}

void criterion_2() {
  bool ok = true;
  std::string detail = "k=1 triangles, tau=(1,1) and (0,1): ";
  for (const double tau1 : {1.0, 0.0}) {
    const ConvergenceResult& res = table_for("c1_tri_sq", 1, tau1, 1.0);
    const RateRow& last = res.table.back();
    ok = ok && in_window(last.rate_e0, 1.85, 2.35) && in_window(last.rate_eb, 1.85, 2.35);
    // the multiplier norm must decrease monotonically from level 2 onward
    for (std::size_t i = 3; i < res.reports.size(); ++i)
      ok = ok && res.reports[i].err_eh < res.reports[i - 1].err_eh;
    detail += fmt("tau1=%g rates e0=%.4f eb=%.4f eh(l2..l5)=%.2E>%.2E>%.2E>%.2E; ",
                  tau1, last.rate_e0, last.rate_eb, res.reports[2].err_eh,
                  res.reports[3].err_eh, res.reports[4].err_eh, res.reports[5].err_eh);
  }
  report(2, ok, detail + "window [1.85,2.35]");
}

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail = "k=2 triangles: ";
  const double taus[3][2] = {{1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
  for (const auto& tau : taus) {
    const RateRow& last = table_for("c1_tri_sq", 2, tau[0], tau[1]).table.back();
    ok = ok && in_window(last.rate_e0, 2.8, 3.3) && in_window(last.rate_eb, 2.8, 3.3);
    detail += fmt("tau=(%g,%g) e0=%.4f eb=%.4f; ", tau[0], tau[1], last.rate_e0,
                  last.rate_eb);
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed <= 180.0;
  report(3, ok, detail + fmt("window [2.8,3.3], %.2f s <= 180 s", elapsed));
}

void criterion_4() {
  bool ok = true;
  std::string detail = "k=1 rectangles: ";
  const double taus[3][2] = {{1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
  for (const auto& tau : taus) {
    const RateRow& last = table_for("c1_rect_sq", 1, tau[0], tau[1]).table.back();
    ok = ok && in_window(last.rate_e0, 1.85, 2.35) && in_window(last.rate_eb, 1.85, 2.35);
    detail += fmt("tau=(%g,%g) e0=%.4f eb=%.4f; ", tau[0], tau[1], last.rate_e0,
                  last.rate_eb);
  }
  report(4, ok, detail + "window [1.85,2.35]");
}

void criterion_5() {
  bool ok = true;
  std::string detail = "nonconvex domains, rotating field: ";
  const double taus[3][2] = {{1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
  for (const char* id : {"c2_exp_lshape", "c2_exp_crack"}) {
    for (int k : {1, 2}) {
      const double lo = k == 1 ? 1.8 : 2.8;
      const double hi = k == 1 ? 2.35 : 3.3;
      double worst_lo = 1e300, worst_hi = -1e300;
      for (const auto& tau : taus) {
        const double rate = table_for(id, k, tau[0], tau[1]).table.back().rate_e0;
        worst_lo = std::min(worst_lo, rate);
        worst_hi = std::max(worst_hi, rate);
        ok = ok && in_window(rate, lo, hi);
      }
      detail += fmt("%s k=%d e0 in [%.4f,%.4f]; ", id, k, worst_lo, worst_hi);
    }
  }
  report(5, ok, detail + "windows [1.8,2.35] / [2.8,3.3]");
}

void criterion_6() {
  bool ok = true;
  std::string detail = "discontinuous convection, k=1: ";
  const double taus[3][2] = {{1.0, 1.0}, {0.0, 1.0}, {0.0, 0.0}};
  for (const auto& tau : taus) {
    const RateRow& last = table_for("c3_disc", 1, tau[0], tau[1]).table.back();
    ok = ok && in_window(last.rate_e0, 1.85, 2.35) && in_window(last.rate_eb, 1.85, 2.35);
    detail += fmt("tau=(%g,%g) e0=%.4f eb=%.4f; ", tau[0], tau[1], last.rate_e0,
                  last.rate_eb);
  }
  report(6, ok, detail + "window [1.85,2.35]");
}

void criterion_7() {
  // Reference e0 magnitudes at 1/h = 32 for the k=1 triangular runs; the
  // computed value must lie within a factor of 3 (the coarse-mesh diagonal
  // orientation legitimately shifts constants, so rates are the hard gate and
  // magnitudes a sanity corridor).
  struct Target {
    const char* id;
    double tau1, tau2;
    double reference;
  };
  const std::vector<Target> targets{
      {"c1_tri_sq", 1.0, 1.0, 1.8214e-4}, {"c1_tri_sq", 0.0, 1.0, 1.3639e-4},
      {"c1_tri_sq", 0.0, 0.0, 1.3458e-4}, {"c2_exp_lshape", 1.0, 1.0, 4.4053e-5},
      {"c2_exp_crack", 1.0, 1.0, 1.1360e-4}, {"c3_disc", 1.0, 1.0, 4.2912e-5},
  };
  bool ok = true;
  std::string detail = "e0 magnitude at 1/h=32 vs reference: ";
  for (const Target& t : targets) {
    const double mine = table_for(t.id, 1, t.tau1, t.tau2).table.back().err_e0;
    const double ratio = mine / t.reference;
    ok = ok && in_window(ratio, 1.0 / 3.0, 3.0);
    detail += fmt("%s tau1=%g ratio=%.2f; ", t.id, t.tau1, ratio);
  }
  report(7, ok, detail + "window [0.33,3.00]");
}

// --------------------------------------------------------------------------
// criterion 8: structural property suite

Mesh random_small_element(std::mt19937& rng, bool triangle) {
  std::uniform_real_distribution<double> pos(0.1, 0.9);
  std::uniform_real_distribution<double> size(0.01, 0.04);
  const double cx = pos(rng), cy = pos(rng);
  if (triangle) {
    std::uniform_real_distribution<double> jitter(0.25, 1.0);
    for (;;) {
      const Point2 a{cx - size(rng), cy - size(rng) * jitter(rng)};
      const Point2 b{cx + size(rng), cy - size(rng) * jitter(rng)};
      const Point2 c{cx + size(rng) * (jitter(rng) - 0.5), cy + size(rng)};
      if ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y) > 1e-8)
        return single_element_mesh(ElementKind::triangle, {a, b, c});
    }
  }
  const double wx = size(rng), wy = size(rng);
  return single_element_mesh(ElementKind::rectangle,
                             {Point2{cx, cy}, Point2{cx + wx, cy},
                              Point2{cx + wx, cy + wy}, Point2{cx, cy + wy}});
}

/// max relative defect of grad_w(Q_h w) - Q_{k-1}(grad w) on element 0.
double commutativity_defect(const Mesh& mesh, int k) {
  const auto w = [](Point2 p) { return std::sin(p.x) * std::cos(p.y); };
  const auto wx = [](Point2 p) { return std::cos(p.x) * std::cos(p.y); };
  const auto wy = [](Point2 p) { return -std::sin(p.x) * std::sin(p.y); };

  const Element& elem = mesh.elements[0];
  Eigen::VectorXd dofs(local_weak_dofs(elem, k));
  dofs.head(poly_space_dim(k)) = l2_project_element(w, mesh, 0, k, 8);
  int offset = poly_space_dim(k);
  for (int edge_id : elem.edge_ids) {
    dofs.segment(offset, k + 1) = l2_project_edge(w, mesh, edge_id, k, 40);
    offset += k + 1;
  }
  const WeakGradientTable table = weak_gradient_operator(mesh, 0, k);
  const Eigen::VectorXd px = l2_project_element(wx, mesh, 0, k - 1, 8);
  const Eigen::VectorXd py = l2_project_element(wy, mesh, 0, k - 1, 8);
  const double scale = std::max(
      1.0, std::max(px.cwiseAbs().maxCoeff(), py.cwiseAbs().maxCoeff()));
  return std::max((table.gx * dofs - px).cwiseAbs().maxCoeff(),
                  (table.gy * dofs - py).cwiseAbs().maxCoeff()) /
         scale;
}

bool property_commutativity(std::string& detail) {
  std::mt19937 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh mesh = random_small_element(rng, trial % 5 != 3);
    const int k = 1 + trial % 2;
    worst = std::max(worst, commutativity_defect(mesh, k));
  }
  detail += fmt("commutativity defect %.2E <= 1E-10; ", worst);
  return worst <= 1e-10;
}

TestCase polynomial_case(int k, bool crack) {
  TestCase tc;
  tc.id = "poly_exact";
  tc.element_kind = ElementKind::triangle;
  if (crack) {
    // rotating (linear) convection with a polynomial reaction coefficient
    tc.domain = DomainTag::cracked_square;
    tc.beta = VectorField::of(VectorExpr::rotation(0.5, 0.5));
    tc.c = ScalarField::of(ScalarExpr::poly({{1, 0, 1.0}, {0, 1, -1.0}}));
  } else {
    tc.domain = DomainTag::unit_square;
    tc.beta = VectorField::of(VectorExpr::constant(1.0, 1.0));
    tc.c = ScalarField::of(ScalarExpr::constant(1.0));
  }
  if (k == 1)
    tc.exact_lambda =
        ScalarField::of(ScalarExpr::poly({{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, 1.0}}));
  else
    tc.exact_lambda = ScalarField::of(ScalarExpr::poly(
        {{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, -1.0}, {2, 0, 1.0}, {1, 1, 0.5}, {0, 2, -1.0}}));
  return tc;
}

bool property_polynomial_exactness(std::string& detail) {
  double worst = 0.0;
  for (const bool crack : {false, true})
    for (int k : {1, 2}) {
      const TestCase tc = polynomial_case(k, crack);
      Mesh mesh = build_coarse(tc.domain, tc.element_kind);
      for (int level = 0; level <= 3; ++level) {
        if (level > 0) mesh = refine(mesh);
        const SchemeParams params{k, 1.0, 1.0};
        const ErrorReport r = error_norms(solve_case(mesh, params, tc), tc, mesh, params);
        worst = std::max({worst, r.err_e0, r.err_eb, r.err_eh});
      }
    }
  detail += fmt("polynomial exactness defect %.2E <= 1E-10; ", worst);
  return worst <= 1e-10;
}

bool property_symmetry(std::string& detail) {
  double worst_asym = 0.0;
  double worst_residual = 0.0;
  for (const char* id : {"c1_tri_sq", "c1_rect_sq", "c2_exp_lshape", "c2_exp_crack"}) {
    const TestCase& tc = builtin_case(id);
    const Mesh mesh = refine(build_coarse(tc.domain, tc.element_kind));
    for (int k : {1, 2})
      for (const double tau1 : {0.0, 1.0}) {
        const SchemeParams params{k, tau1, 1.0};
        const AssembledProblem problem = assemble_problem(mesh, params, tc);
        Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(
            problem.A.transpose()) - problem.A;
        for (int col = 0; col < diff.outerSize(); ++col)
          for (Eigen::SparseMatrix<double>::InnerIterator it(diff, col); it; ++it)
            worst_asym = std::max(worst_asym, std::abs(it.value()));
        worst_residual = std::max(worst_residual, factor_solve(problem).residual_norm);
      }
  }
  detail += fmt("asymmetry %.1E (exact), solve residual %.2E <= 1E-10; ", worst_asym,
                worst_residual);
  return worst_asym == 0.0 && worst_residual <= 1e-10;
}

bool property_weak_gradient_units(std::string& detail) {
  const Mesh mesh = single_element_mesh(
      ElementKind::triangle, {Point2{0, 0}, Point2{1, 0}, Point2{0, 1}});
  const ScalarFn x = [](Point2 p) { return p.x; };
  const ScalarFn xx = [](Point2 p) { return p.x * p.x; };
  const ScalarFn one = [](Point2) { return 1.0; };
  const ScalarFn zero = [](Point2) { return 0.0; };

  const auto [ax, ay] = weak_gradient_of(mesh, 0, x, x, 1);
  const auto [bx, by] = weak_gradient_of(mesh, 0, one, zero, 1);
  const auto [cx, cy] = weak_gradient_of(mesh, 0, xx, xx, 1);
  const double defect = std::max({std::abs(ax(0) - 1.0), std::abs(ay(0)),
                                  std::abs(bx(0)), std::abs(by(0)),
                                  std::abs(cx(0) - 2.0 / 3.0), std::abs(cy(0))});
  detail += fmt("weak-gradient unit defect %.2E <= 1E-12; ", defect);
  return defect <= 1e-12;
}

bool property_quadrature(std::string& detail) {
  double worst = 0.0;
  const auto factorial = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  for (int degree = 1; degree <= 8; ++degree) {
    const QuadratureRule rule = triangle_quadrature({0, 0}, {1, 0}, {0, 1}, degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0.0;
        for (const QuadratureNode& node : rule)
          sum += node.w * std::pow(node.x, a) * std::pow(node.y, b);
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        worst = std::max(worst, std::abs(sum - exact) / exact);
      }
  }
  for (int degree : {2, 6, 10}) {
    const QuadratureRule rule = rectangle_quadrature({0, 0}, {1, 1}, degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= degree; ++b) {
        double sum = 0.0;
        for (const QuadratureNode& node : rule)
          sum += node.w * std::pow(node.x, a) * std::pow(node.y, b);
        const double exact = 1.0 / ((a + 1.0) * (b + 1.0));
        worst = std::max(worst, std::abs(sum - exact) / exact);
      }
  }
  for (int degree = 1; degree <= 13; ++degree) {
    const EdgeQuadratureRule rule = edge_quadrature({0, 0}, {1, 0}, degree);
    for (int j = 0; j <= degree; ++j) {
      double sum = 0.0;
      for (const EdgeQuadratureNode& node : rule) sum += node.w * std::pow(node.x, j);
      const double exact = 1.0 / (j + 1.0);
      worst = std::max(worst, std::abs(sum - exact) / exact);
    }
  }
  detail += fmt("quadrature defect %.2E <= 1E-13", worst);
  return worst <= 1e-13;
}

void criterion_8() {
  std::string detail;
  bool ok = property_commutativity(detail);
  ok = property_polynomial_exactness(detail) && ok;
  ok = property_symmetry(detail) && ok;
  ok = property_weak_gradient_units(detail) && ok;
  ok = property_quadrature(detail) && ok;
  report(8, ok, detail);
}

} // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("acceptance: %d/8 criteria passed\n", 8 - n_failed);
  return n_failed;
}
