#include "pdwg/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "pdwg/basis.hpp"

namespace pdwg {

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

Mesh mesh_at_level(const TestCase& tc, int level) {
  Mesh mesh = build_coarse(tc.domain, tc.element_kind);
  while (mesh.level < level) mesh = refine(mesh);
  return mesh;
}

} // namespace

TestCase resolve_case(const RunConfig& cfg) {
  TestCase tc;
  if (cfg.inline_case)
    tc = *cfg.inline_case;
  else if (!cfg.case_id.empty())
    tc = builtin_case(cfg.case_id);
  else
    throw std::invalid_argument("no case selected (set 'case' or define a [case] section)");
  if (cfg.element_override) tc.element_kind = *cfg.element_override;
  return tc;
}

std::string format_rate_csv(const RateTable& table) {
  std::string csv = "inv_h,err_e0,rate_e0,err_eb,rate_eb,err_eh,rate_eh\n";
  char buf[64];
  const auto put_err = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4E", v);
    csv += buf;
  };
  const auto put_rate = [&](double v) {
    if (std::isnan(v)) return;
    std::snprintf(buf, sizeof buf, "%.4f", v);
    csv += buf;
  };
  for (const RateRow& row : table) {
    std::snprintf(buf, sizeof buf, "%d,", row.inv_h_label);
    csv += buf;
    put_err(row.err_e0);
    csv += ',';
    put_rate(row.rate_e0);
    csv += ',';
    put_err(row.err_eb);
    csv += ',';
    put_rate(row.rate_eb);
    csv += ',';
    put_err(row.err_eh);
    csv += ',';
    put_rate(row.rate_eh);
    csv += '\n';
  }
  return csv;
}

ConvergenceResult run_convergence(const RunConfig& cfg) {
  const TestCase tc = resolve_case(cfg);
  if (!tc.has_exact())
    throw std::invalid_argument("convergence study needs an exact solution; case '" +
                                tc.id + "' has none");
  const SchemeParams params{cfg.k, cfg.tau1, cfg.tau2};

  ConvergenceResult out;
  Mesh mesh = build_coarse(tc.domain, tc.element_kind);
  for (const int target : cfg.levels) {
    while (mesh.level < target) mesh = refine(mesh);
    try {
      const Solution sol = solve_case(mesh, params, tc);
      out.reports.push_back(error_norms(sol, tc, mesh, params));
    } catch (const std::exception& err) {
      throw std::runtime_error("level " + std::to_string(target) + ": " + err.what());
    }
  }
  out.table = convergence_rates(out.reports);
  out.csv = format_rate_csv(out.table);
  if (!cfg.out.empty()) write_file(cfg.out, out.csv);
  return out;
}

SolveResult run_solve(const RunConfig& cfg) {
  SolveResult res;
  res.tc = resolve_case(cfg);
  res.params = SchemeParams{cfg.k, cfg.tau1, cfg.tau2};
  res.mesh = mesh_at_level(res.tc, cfg.levels.back());
  res.solution = solve_case(res.mesh, res.params, res.tc);
  if (res.tc.has_exact())
    res.errors = error_norms(res.solution, res.tc, res.mesh, res.params);
  return res;
}

std::string format_solve_summary(const SolveResult& res) {
  const MeshStats stats = mesh_stats(res.mesh);
  char buf[128];
  std::string text;
  text += "case: " + res.tc.id + "\n";
  std::snprintf(buf, sizeof buf, "k: %d  tau1: %g  tau2: %g\n", res.params.k,
                res.params.tau1, res.params.tau2);
  text += buf;
  std::snprintf(buf, sizeof buf, "level: %d  inv_h: %d\n", res.mesh.level,
                stats.inv_h_label);
  text += buf;
  std::snprintf(buf, sizeof buf, "elements: %zu  edges: %zu  free_dofs: %d\n",
                stats.n_elements, stats.n_edges, res.solution.n_free);
  text += buf;
  std::snprintf(buf, sizeof buf, "residual: %.4E\n", res.solution.residual_norm);
  text += buf;
  if (res.errors) {
    std::snprintf(buf, sizeof buf, "err_e0: %.4E\nerr_eb: %.4E\nerr_eh: %.4E\n",
                  res.errors->err_e0, res.errors->err_eb, res.errors->err_eh);
    text += buf;
    std::snprintf(buf, sizeof buf, "triple_Wh: %.4E\ntriple_Mh: %.4E\n",
                  res.errors->triple_Wh, res.errors->triple_Mh);
    text += buf;
  }
  return text;
}

std::string run_plot_export(const RunConfig& cfg) {
  const SolveResult res = run_solve(cfg);
  const int d = cfg.density;
  const int dim0 = poly_space_dim(cfg.k);

  std::string csv = "x,y,lambda0\n";
  char buf[96];
  std::vector<Point2> pts;
  for (int t = 0; t < static_cast<int>(res.mesh.elements.size()); ++t) {
    const Element& elem = res.mesh.elements[t];
    const std::vector<Point2> v = res.mesh.element_vertices(t);
    pts.clear();
    if (elem.kind == ElementKind::triangle) {
      for (int i = 0; i < d; ++i)
        for (int j = 0; i + j < d; ++j) {
          const double b1 = (i + 1.0 / 3.0) / d;
          const double b2 = (j + 1.0 / 3.0) / d;
          pts.push_back(v[0] + b1 * (v[1] - v[0]) + b2 * (v[2] - v[0]));
        }
    } else {
      Point2 lo = v[0], hi = v[0];
      for (const Point2& p : v) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
      }
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          pts.push_back({lo.x + (i + 0.5) / d * (hi.x - lo.x),
                         lo.y + (j + 0.5) / d * (hi.y - lo.y)});
    }

    const ElementBasis basis = ElementBasis::make(res.mesh, t, cfg.k);
    const ElementBasisValues vals = eval_element_basis(basis, pts);
    const Eigen::VectorXd coef = res.solution.lambda0.segment(t * dim0, dim0);
    for (int q = 0; q < static_cast<int>(pts.size()); ++q) {
      std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.8E\n", pts[q].x, pts[q].y,
                    coef.dot(vals.values.col(q)));
      csv += buf;
    }
  }
  if (!cfg.plot_out.empty()) write_file(cfg.plot_out, csv);
  return csv;
}

} // namespace pdwg
