#include "pdwg/basis.hpp"

namespace pdwg {

ElementBasis ElementBasis::make(const Mesh& mesh, int element_id, int degree) {
  const Element& elem = mesh.elements[element_id];
  ElementBasis basis;
  basis.degree = degree;
  basis.center = elem.centroid;
  basis.scale = elem.diameter;
  basis.exponents.reserve(poly_space_dim(degree));
  for (int d = 0; d <= degree; ++d)
    for (int a1 = d; a1 >= 0; --a1)
      basis.exponents.push_back({a1, d - a1});
  return basis;
}

ElementBasisValues eval_element_basis(const ElementBasis& basis,
                                      const std::vector<Point2>& points) {
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index nq = static_cast<Eigen::Index>(points.size());
  ElementBasisValues out;
  out.values.resize(nb, nq);
  out.gx.resize(nb, nq);
  out.gy.resize(nb, nq);

  const double inv_h = 1.0 / basis.scale;
  // powers of the scaled coordinates up to the degree, per point
  std::vector<double> px(basis.degree + 1), py(basis.degree + 1);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double X = (points[q].x - basis.center.x) * inv_h;
    const double Y = (points[q].y - basis.center.y) * inv_h;
    px[0] = py[0] = 1.0;
    for (int d = 1; d <= basis.degree; ++d) {
      px[d] = px[d - 1] * X;
      py[d] = py[d - 1] * Y;
    }
    for (Eigen::Index i = 0; i < nb; ++i) {
      const int a1 = basis.exponents[i][0];
      const int a2 = basis.exponents[i][1];
      out.values(i, q) = px[a1] * py[a2];
      out.gx(i, q) = a1 > 0 ? a1 * inv_h * px[a1 - 1] * py[a2] : 0.0;
      out.gy(i, q) = a2 > 0 ? a2 * inv_h * px[a1] * py[a2 - 1] : 0.0;
    }
  }
  return out;
}

ElementBasisValues eval_element_basis(const ElementBasis& basis, const QuadratureRule& rule) {
  std::vector<Point2> pts;
  pts.reserve(rule.size());
  for (const QuadratureNode& node : rule) pts.push_back({node.x, node.y});
  return eval_element_basis(basis, pts);
}

EdgeBasis EdgeBasis::make(const Mesh& mesh, int edge_id, int degree) {
  const Edge& edge = mesh.edges[edge_id];
  EdgeBasis basis;
  basis.degree = degree;
  basis.p0 = mesh.points[edge.endpoint_ids[0]];
  basis.p1 = mesh.points[edge.endpoint_ids[1]];
  return basis;
}

Eigen::MatrixXd eval_edge_basis(const EdgeBasis& basis, const std::vector<double>& params) {
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index nq = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd values(nb, nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    values(0, q) = 1.0;
    for (Eigen::Index j = 1; j < nb; ++j) values(j, q) = values(j - 1, q) * params[q];
  }
  return values;
}

} // namespace pdwg
