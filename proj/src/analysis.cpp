#include "pdwg/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdwg/basis.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/weakcalc.hpp"

namespace pdwg {

ErrorReport error_norms(const Solution& sol, const TestCase& tc, const Mesh& mesh,
                        const SchemeParams& params) {
  if (!tc.has_exact())
    throw std::invalid_argument("error norms need a case with an exact solution");

  const int k = params.k;
  const int dim0 = poly_space_dim(k);
  const int dimb = k + 1;
  const int dimu = poly_space_dim(k - 1);
  const ScalarField& lambda = *tc.exact_lambda;

  // Per-edge trace-projection errors, shared by both adjacent elements.
  const int n_edges = static_cast<int>(mesh.edges.size());
  std::vector<Eigen::VectorXd> edge_delta(n_edges);
  std::vector<Eigen::MatrixXd> edge_mass(n_edges);
  for (int e = 0; e < n_edges; ++e) {
    const Point2 mid = mesh.edges[e].midpoint;
    const ScalarFn lam = [&lambda, mid](Point2 p) { return lambda.eval(p, mid); };
    edge_delta[e] =
        sol.lambdab.segment(e * dimb, dimb) - l2_project_edge(lam, mesh, e, k, 2 * k + 8);
    edge_mass[e] = edge_mass_matrix(mesh, e, k);
  }

  double e0_sq = 0.0, eb_sq = 0.0, eh_sq = 0.0, wh_sq = 0.0, mh_sq = 0.0;

  for (int t = 0; t < static_cast<int>(mesh.elements.size()); ++t) {
    const Element& elem = mesh.elements[t];
    const double h = elem.diameter;
    const Point2 selector = elem.centroid;

    const ScalarFn lam = [&lambda, selector](Point2 p) { return lambda.eval(p, selector); };
    const Eigen::VectorXd d0 =
        sol.lambda0.segment(t * dim0, dim0) - l2_project_element(lam, mesh, t, k);
    e0_sq += d0.dot(element_mass_matrix(mesh, t, k) * d0);

    const Eigen::VectorXd ut = sol.u.segment(t * dimu, dimu);
    const double u_sq = ut.dot(element_mass_matrix(mesh, t, k - 1) * ut);
    eh_sq += u_sq;
    mh_sq += params.tau2 * h * h * u_sq;

    const ElementBasis basis_k = ElementBasis::make(mesh, t, k);

    if (params.tau1 != 0.0) {
      const QuadratureRule vol = element_quadrature(mesh, t, 2 * k + 4);
      const ElementBasisValues vk = eval_element_basis(basis_k, vol);
      double res_sq = 0.0;
      for (int q = 0; q < static_cast<int>(vol.size()); ++q) {
        const Point2 p{vol[q].x, vol[q].y};
        const Point2 bq = tc.beta.eval(p, selector);
        const double cq = tc.c.eval(p, selector);
        double r = 0.0;
        for (int i = 0; i < dim0; ++i)
          r += d0(i) * (bq.x * vk.gx(i, q) + bq.y * vk.gy(i, q) - cq * vk.values(i, q));
        res_sq += vol[q].w * r * r;
      }
      wh_sq += params.tau1 * res_sq;
    }

    for (int edge_id : elem.edge_ids) {
      eb_sq += h * edge_delta[edge_id].dot(edge_mass[edge_id] * edge_delta[edge_id]);

      const EdgeQuadratureRule rule = edge_quadrature(mesh, edge_id, 2 * k + 2);
      std::vector<Point2> pts;
      std::vector<double> svals;
      pts.reserve(rule.size());
      svals.reserve(rule.size());
      for (const EdgeQuadratureNode& node : rule) {
        pts.push_back({node.x, node.y});
        svals.push_back(node.s);
      }
      const ElementBasisValues trace = eval_element_basis(basis_k, pts);
      const Eigen::MatrixXd ev = eval_edge_basis(EdgeBasis::make(mesh, edge_id, k), svals);
      double jump_sq = 0.0;
      for (int q = 0; q < static_cast<int>(rule.size()); ++q) {
        const double val =
            d0.dot(trace.values.col(q)) - edge_delta[edge_id].dot(ev.col(q));
        jump_sq += rule[q].w * val * val;
      }
      wh_sq += jump_sq / h;
    }
  }

  ErrorReport rep;
  rep.level = mesh.level;
  rep.inv_h_label = mesh_stats(mesh).inv_h_label;
  rep.err_e0 = std::sqrt(e0_sq);
  rep.err_eb = std::sqrt(eb_sq);
  rep.err_eh = std::sqrt(eh_sq);
  rep.triple_Wh = std::sqrt(wh_sq);
  rep.triple_Mh = std::sqrt(mh_sq);
  return rep;
}

namespace {

double rate_of(double prev, double cur) {
  if (!(prev > 0.0) || !(cur > 0.0))
    throw std::domain_error("convergence rate undefined for nonpositive errors");
  return std::log2(prev / cur);
}

} // namespace

RateTable convergence_rates(const std::vector<ErrorReport>& reports) {
  RateTable table;
  table.reserve(reports.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    RateRow row;
    row.inv_h_label = reports[i].inv_h_label;
    row.err_e0 = reports[i].err_e0;
    row.err_eb = reports[i].err_eb;
    row.err_eh = reports[i].err_eh;
    if (i == 0) {
      row.rate_e0 = row.rate_eb = row.rate_eh = nan;
    } else {
      row.rate_e0 = rate_of(reports[i - 1].err_e0, row.err_e0);
      row.rate_eb = rate_of(reports[i - 1].err_eb, row.err_eb);
      row.rate_eh = rate_of(reports[i - 1].err_eh, row.err_eh);
    }
    table.push_back(row);
  }
  return table;
}

} // namespace pdwg
