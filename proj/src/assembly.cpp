#include "pdwg/assembly.hpp"

#include <stdexcept>

#include "pdwg/basis.hpp"
#include "pdwg/quadrature.hpp"
#include "pdwg/weakcalc.hpp"

namespace pdwg {

DofMap build_dof_map(const Mesh& mesh, const SchemeParams& params, const TestCase& tc) {
  if (params.k < 1 || params.k > 2)
    throw std::invalid_argument("polynomial order k must be 1 or 2");

  DofMap dm;
  dm.k = params.k;
  dm.dim0 = poly_space_dim(params.k);
  dm.dimb = params.k + 1;
  dm.dimu = poly_space_dim(params.k - 1);
  dm.n_elements = static_cast<int>(mesh.elements.size());
  dm.n_edges = static_cast<int>(mesh.edges.size());
  dm.n_raw = dm.n_elements * dm.dim0 + dm.n_edges * dm.dimb + dm.n_elements * dm.dimu;
  dm.free_index.assign(dm.n_raw, 0);
  dm.constrained_value.assign(dm.n_raw, 0.0);

  const BetaFn beta = [&tc](Point2 mid) { return tc.beta.eval(mid, mid); };
  std::vector<char> constrained(dm.n_raw, 0);
  for (const InflowEdge& ie : classify_inflow(mesh, beta)) {
    const Point2 mid = mesh.edges[ie.edge_id].midpoint;
    const ScalarFn gfun = [&tc, mid](Point2 p) { return tc.inflow_value(p, mid); };
    const Eigen::VectorXd coef = l2_project_edge(gfun, mesh, ie.edge_id, params.k);
    for (int j = 0; j < dm.dimb; ++j) {
      const int raw = dm.lambdab_raw(ie.edge_id, j);
      constrained[raw] = 1;
      dm.constrained_value[raw] = coef(j);
    }
  }

  int next = 0;
  for (int raw = 0; raw < dm.n_raw; ++raw)
    dm.free_index[raw] = constrained[raw] ? -1 : next++;
  dm.n_free = next;
  return dm;
}

LocalSystem assemble_local(const Mesh& mesh, int element_id, const SchemeParams& params,
                           const TestCase& tc, const DofMap& dofs) {
  const Element& elem = mesh.elements[element_id];
  const int k = params.k;
  const int dim0 = dofs.dim0;
  const int dimb = dofs.dimb;
  const int dimu = dofs.dimu;
  const int n_loc_edges = static_cast<int>(elem.edge_ids.size());
  const int n_lambda = dim0 + n_loc_edges * dimb;
  const Point2 selector = elem.centroid;
  const double h = elem.diameter;

  LocalSystem loc;
  loc.S = Eigen::MatrixXd::Zero(n_lambda, n_lambda);
  loc.B = Eigen::MatrixXd::Zero(dimu, n_lambda);
  loc.f_sigma = Eigen::VectorXd::Zero(n_lambda);
  loc.f_v = Eigen::VectorXd::Zero(dimu);

  loc.lambda_raw.reserve(n_lambda);
  for (int i = 0; i < dim0; ++i) loc.lambda_raw.push_back(dofs.lambda0_raw(element_id, i));
  for (int le = 0; le < n_loc_edges; ++le)
    for (int j = 0; j < dimb; ++j)
      loc.lambda_raw.push_back(dofs.lambdab_raw(elem.edge_ids[le], j));
  loc.u_raw.reserve(dimu);
  for (int m = 0; m < dimu; ++m) loc.u_raw.push_back(dofs.u_raw(element_id, m));

  const ElementBasis basis_k = ElementBasis::make(mesh, element_id, k);
  const ElementBasis basis_u = ElementBasis::make(mesh, element_id, k - 1);
  const WeakGradientTable grad = weak_gradient_operator(mesh, element_id, k);

  // Volume terms: residual stabilizer, weak-convection coupling, both loads.
  const QuadratureRule vol = element_quadrature(mesh, element_id, 2 * k + 4);
  const int nq = static_cast<int>(vol.size());
  const ElementBasisValues vk = eval_element_basis(basis_k, vol);
  const ElementBasisValues vu = eval_element_basis(basis_u, vol);

  // (q, j) values of the two weak-gradient components of every local dof.
  const Eigen::MatrixXd wx = vu.values.transpose() * grad.gx;
  const Eigen::MatrixXd wy = vu.values.transpose() * grad.gy;

  Eigen::VectorXd d = Eigen::VectorXd::Zero(n_lambda);
  Eigen::VectorXd conv(n_lambda);
  for (int q = 0; q < nq; ++q) {
    const Point2 p{vol[q].x, vol[q].y};
    const double w = vol[q].w;
    const Point2 bq = tc.beta.eval(p, selector);
    const double cq = tc.c.eval(p, selector);
    const double fq = tc.forcing(p, selector);

    if (params.tau1 != 0.0) {
      for (int i = 0; i < dim0; ++i)
        d(i) = bq.x * vk.gx(i, q) + bq.y * vk.gy(i, q) - cq * vk.values(i, q);
      // lower-triangular rank-1 update; mirrored below so S is symmetric to
      // the bit, which the global scatter relies on
      loc.S.selfadjointView<Eigen::Lower>().rankUpdate(d, params.tau1 * w);
      loc.f_sigma.noalias() += (params.tau1 * w * fq) * d;
    }

    conv = bq.x * wx.row(q).transpose() + bq.y * wy.row(q).transpose();
    conv.head(dim0) -= cq * vk.values.col(q);
    loc.B.noalias() += w * (vu.values.col(q) * conv.transpose());
    loc.f_v.noalias() += (w * fq) * vu.values.col(q);
  }

  // Edge jump stabilizer: 1/h_T <rho0 - rho_b, sigma0 - sigma_b>_dT.
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n_lambda);
  for (int le = 0; le < n_loc_edges; ++le) {
    const int edge_id = elem.edge_ids[le];
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
    const EdgeBasis edge_basis = EdgeBasis::make(mesh, edge_id, k);
    const Eigen::MatrixXd ev = eval_edge_basis(edge_basis, svals);
    for (int q = 0; q < static_cast<int>(rule.size()); ++q) {
      t.setZero();
      t.head(dim0) = trace.values.col(q);
      t.segment(dim0 + le * dimb, dimb) = -ev.col(q);
      loc.S.selfadjointView<Eigen::Lower>().rankUpdate(t, rule[q].w / h);
    }
  }
  loc.S = loc.S.selfadjointView<Eigen::Lower>();

  Eigen::MatrixXd mass = element_mass_matrix(mesh, element_id, k - 1);
  mass = mass.selfadjointView<Eigen::Lower>();
  loc.D = (params.tau2 * h * h) * mass;
  return loc;
}

AssembledProblem assemble_problem(const Mesh& mesh, const SchemeParams& params,
                                  const TestCase& tc) {
  AssembledProblem out;
  out.dofs = build_dof_map(mesh, params, tc);
  const DofMap& dm = out.dofs;

  out.rhs = Eigen::VectorXd::Zero(dm.n_free);
  std::vector<Eigen::Triplet<double>> trips;
  {
    const int n_lambda0 = dm.dim0 + (mesh.elements.front().edge_ids.size()) * dm.dimb;
    const std::size_t per_elem =
        static_cast<std::size_t>(n_lambda0 + dm.dimu) * (n_lambda0 + dm.dimu);
    trips.reserve(per_elem * mesh.elements.size());
  }

  const auto scatter = [&](int raw_row, int raw_col, double val) {
    if (val == 0.0) return;
    const int row = dm.free_index[raw_row];
    if (row < 0) return; // constrained test rows are dropped
    const int col = dm.free_index[raw_col];
    if (col >= 0)
      trips.emplace_back(row, col, val);
    else
      out.rhs(row) -= val * dm.constrained_value[raw_col];
  };

  for (int e = 0; e < dm.n_elements; ++e) {
    const LocalSystem loc = assemble_local(mesh, e, params, tc, dm);
    const int nl = static_cast<int>(loc.lambda_raw.size());
    const int nu = static_cast<int>(loc.u_raw.size());

    for (int i = 0; i < nl; ++i)
      for (int j = 0; j < nl; ++j) scatter(loc.lambda_raw[i], loc.lambda_raw[j], loc.S(i, j));
    for (int m = 0; m < nu; ++m)
      for (int j = 0; j < nl; ++j) {
        // Identical value into B and B^T keeps the assembled matrix exactly
        // symmetric after elimination.
        scatter(loc.u_raw[m], loc.lambda_raw[j], loc.B(m, j));
        scatter(loc.lambda_raw[j], loc.u_raw[m], loc.B(m, j));
      }
    if (params.tau2 != 0.0)
      for (int m = 0; m < nu; ++m)
        for (int n = 0; n < nu; ++n) scatter(loc.u_raw[m], loc.u_raw[n], -loc.D(m, n));

    for (int i = 0; i < nl; ++i) {
      const int row = dm.free_index[loc.lambda_raw[i]];
      if (row >= 0) out.rhs(row) += loc.f_sigma(i);
    }
    for (int m = 0; m < nu; ++m) out.rhs(dm.free_index[loc.u_raw[m]]) += loc.f_v(m);
  }

  out.A.resize(dm.n_free, dm.n_free);
  out.A.setFromTriplets(trips.begin(), trips.end());
  out.A.makeCompressed();
  return out;
}

} // namespace pdwg
