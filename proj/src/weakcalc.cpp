#include "pdwg/weakcalc.hpp"

#include <stdexcept>

#include "pdwg/quadrature.hpp"

namespace pdwg {

namespace {

int default_quad_degree(int degree) { return 2 * degree + 4; }

Eigen::MatrixXd mass_from_rule(const ElementBasis& basis, const QuadratureRule& rule) {
  const ElementBasisValues vals = eval_element_basis(basis, rule);
  Eigen::VectorXd w(static_cast<Eigen::Index>(rule.size()));
  for (std::size_t q = 0; q < rule.size(); ++q) w[static_cast<Eigen::Index>(q)] = rule[q].w;
  return vals.values * w.asDiagonal() * vals.values.transpose();
}

Eigen::LLT<Eigen::MatrixXd> factor_mass(const Eigen::MatrixXd& mass, const char* where) {
  Eigen::LLT<Eigen::MatrixXd> llt(mass);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(std::string(where) + ": local mass matrix is not SPD");
  return llt;
}

} // namespace

Eigen::MatrixXd element_mass_matrix(const Mesh& mesh, int element_id, int degree,
                                    int quad_degree) {
  if (quad_degree < 0) quad_degree = default_quad_degree(degree);
  const ElementBasis basis = ElementBasis::make(mesh, element_id, degree);
  return mass_from_rule(basis, element_quadrature(mesh, element_id, quad_degree));
}

Eigen::MatrixXd edge_mass_matrix(const Mesh& mesh, int edge_id, int degree,
                                 int quad_degree) {
  if (quad_degree < 0) quad_degree = default_quad_degree(degree);
  const EdgeBasis basis = EdgeBasis::make(mesh, edge_id, degree);
  const EdgeQuadratureRule rule = edge_quadrature(mesh, edge_id, quad_degree);
  std::vector<double> params(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) params[q] = rule[q].s;
  const Eigen::MatrixXd vals = eval_edge_basis(basis, params);
  Eigen::VectorXd w(static_cast<Eigen::Index>(rule.size()));
  for (std::size_t q = 0; q < rule.size(); ++q) w[static_cast<Eigen::Index>(q)] = rule[q].w;
  return vals * w.asDiagonal() * vals.transpose();
}

Eigen::VectorXd l2_project_element(const ScalarFn& f, const Mesh& mesh, int element_id,
                                   int degree, int quad_degree) {
  if (quad_degree < 0) quad_degree = default_quad_degree(degree);
  const ElementBasis basis = ElementBasis::make(mesh, element_id, degree);
  const QuadratureRule rule = element_quadrature(mesh, element_id, quad_degree);
  const ElementBasisValues vals = eval_element_basis(basis, rule);

  Eigen::VectorXd load = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t q = 0; q < rule.size(); ++q)
    load += rule[q].w * f({rule[q].x, rule[q].y}) *
            vals.values.col(static_cast<Eigen::Index>(q));
  return factor_mass(mass_from_rule(basis, rule), "l2_project_element").solve(load);
}

Eigen::VectorXd l2_project_edge(const ScalarFn& g, const Mesh& mesh, int edge_id,
                                int degree, int quad_degree) {
  if (quad_degree < 0) quad_degree = default_quad_degree(degree);
  const EdgeBasis basis = EdgeBasis::make(mesh, edge_id, degree);
  const EdgeQuadratureRule rule = edge_quadrature(mesh, edge_id, quad_degree);
  std::vector<double> params(rule.size());
  for (std::size_t q = 0; q < rule.size(); ++q) params[q] = rule[q].s;
  const Eigen::MatrixXd vals = eval_edge_basis(basis, params);

  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(vals.rows(), vals.rows());
  Eigen::VectorXd load = Eigen::VectorXd::Zero(vals.rows());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::Index qq = static_cast<Eigen::Index>(q);
    mass += rule[q].w * vals.col(qq) * vals.col(qq).transpose();
    load += rule[q].w * g({rule[q].x, rule[q].y}) * vals.col(qq);
  }
  return factor_mass(mass, "l2_project_edge").solve(load);
}

WeakGradientTable weak_gradient_operator(const Mesh& mesh, int element_id, int k) {
  const Element& elem = mesh.elements[element_id];
  const int quad_degree = default_quad_degree(k);
  const ElementBasis test_basis = ElementBasis::make(mesh, element_id, k - 1);
  const ElementBasis v0_basis = ElementBasis::make(mesh, element_id, k);
  const Eigen::Index m = static_cast<Eigen::Index>(test_basis.size());
  const Eigen::Index dim0 = static_cast<Eigen::Index>(v0_basis.size());
  const Eigen::Index dimb = k + 1;
  const Eigen::Index n_local = dim0 + static_cast<Eigen::Index>(elem.edge_ids.size()) * dimb;

  const QuadratureRule rule = element_quadrature(mesh, element_id, quad_degree);
  const ElementBasisValues test_vals = eval_element_basis(test_basis, rule);
  const ElementBasisValues v0_vals = eval_element_basis(v0_basis, rule);

  Eigen::MatrixXd rhs_x = Eigen::MatrixXd::Zero(m, n_local);
  Eigen::MatrixXd rhs_y = Eigen::MatrixXd::Zero(m, n_local);

  // -(v0, div psi)_T with psi = (chi, 0) and (0, chi)
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::Index qq = static_cast<Eigen::Index>(q);
    rhs_x.leftCols(dim0) -=
        rule[q].w * test_vals.gx.col(qq) * v0_vals.values.col(qq).transpose();
    rhs_y.leftCols(dim0) -=
        rule[q].w * test_vals.gy.col(qq) * v0_vals.values.col(qq).transpose();
  }

  // <vb, psi.n>_{dT}, edge by edge with this element's outward normal
  for (std::size_t le = 0; le < elem.edge_ids.size(); ++le) {
    const int edge_id = elem.edge_ids[le];
    const Edge& edge = mesh.edges[edge_id];
    const double sign = elem.normal_signs[le];
    const Point2 n = sign * edge.unit_normal;
    const EdgeBasis edge_basis = EdgeBasis::make(mesh, edge_id, k);
    const EdgeQuadratureRule erule = edge_quadrature(mesh, edge_id, quad_degree);

    std::vector<double> params(erule.size());
    std::vector<Point2> epts(erule.size());
    for (std::size_t q = 0; q < erule.size(); ++q) {
      params[q] = erule[q].s;
      epts[q] = {erule[q].x, erule[q].y};
    }
    const Eigen::MatrixXd evals = eval_edge_basis(edge_basis, params);
    const ElementBasisValues tvals = eval_element_basis(test_basis, epts);

    const Eigen::Index col0 = dim0 + static_cast<Eigen::Index>(le) * dimb;
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const Eigen::Index qq = static_cast<Eigen::Index>(q);
      const Eigen::MatrixXd outer =
          erule[q].w * tvals.values.col(qq) * evals.col(qq).transpose();
      rhs_x.block(0, col0, m, dimb) += n.x * outer;
      rhs_y.block(0, col0, m, dimb) += n.y * outer;
    }
  }

  const Eigen::LLT<Eigen::MatrixXd> llt =
      factor_mass(mass_from_rule(test_basis, rule), "weak_gradient_operator");
  WeakGradientTable table;
  table.gx = llt.solve(rhs_x);
  table.gy = llt.solve(rhs_y);
  return table;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> weak_gradient_of(
    const Mesh& mesh, int element_id, const ScalarFn& v0, const ScalarFn& vb, int k,
    int quad_degree) {
  const Element& elem = mesh.elements[element_id];
  if (quad_degree < 0) quad_degree = default_quad_degree(k);
  const ElementBasis test_basis = ElementBasis::make(mesh, element_id, k - 1);
  const Eigen::Index m = static_cast<Eigen::Index>(test_basis.size());

  const QuadratureRule rule = element_quadrature(mesh, element_id, quad_degree);
  const ElementBasisValues test_vals = eval_element_basis(test_basis, rule);

  Eigen::VectorXd bx = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd by = Eigen::VectorXd::Zero(m);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const Eigen::Index qq = static_cast<Eigen::Index>(q);
    const double v = rule[q].w * v0({rule[q].x, rule[q].y});
    bx -= v * test_vals.gx.col(qq);
    by -= v * test_vals.gy.col(qq);
  }
  for (std::size_t le = 0; le < elem.edge_ids.size(); ++le) {
    const int edge_id = elem.edge_ids[le];
    const Point2 n = elem.normal_signs[le] * mesh.edges[edge_id].unit_normal;
    const EdgeQuadratureRule erule = edge_quadrature(mesh, edge_id, quad_degree);
    std::vector<Point2> epts(erule.size());
    for (std::size_t q = 0; q < erule.size(); ++q) epts[q] = {erule[q].x, erule[q].y};
    const ElementBasisValues tvals = eval_element_basis(test_basis, epts);
    for (std::size_t q = 0; q < erule.size(); ++q) {
      const Eigen::Index qq = static_cast<Eigen::Index>(q);
      const double v = erule[q].w * vb(epts[q]);
      bx += v * n.x * tvals.values.col(qq);
      by += v * n.y * tvals.values.col(qq);
    }
  }
  const Eigen::LLT<Eigen::MatrixXd> llt =
      factor_mass(mass_from_rule(test_basis, rule), "weak_gradient_of");
  return {llt.solve(bx), llt.solve(by)};
}

} // namespace pdwg
