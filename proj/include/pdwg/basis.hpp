#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "pdwg/mesh.hpp"
#include "pdwg/quadrature.hpp"

namespace pdwg {

/// Scaled monomial basis of P_k(T): phi_a(x, y) =
/// ((x - x_T)/h_T)^a1 ((y - y_T)/h_T)^a2, |a| <= k, centered at the element
/// centroid. The same space is used on triangles and rectangles; the scaling
/// keeps mass-matrix conditioning independent of the mesh size.
struct ElementBasis {
  int degree = 0;
  Point2 center;
  double scale = 1.0; ///< h_T
  std::vector<std::array<int, 2>> exponents; ///< graded order: (0,0),(1,0),(0,1),(2,0),...

  static ElementBasis make(const Mesh& mesh, int element_id, int degree);
  std::size_t size() const { return exponents.size(); }
};

/// dim P_k in two variables: (k+1)(k+2)/2.
constexpr int poly_space_dim(int k) { return (k + 1) * (k + 2) / 2; }

struct ElementBasisValues {
  Eigen::MatrixXd values; ///< values(i, q) = phi_i at point q
  Eigen::MatrixXd gx;     ///< d/dx, includes the 1/h_T chain factor
  Eigen::MatrixXd gy;     ///< d/dy
};

ElementBasisValues eval_element_basis(const ElementBasis& basis,
                                      const std::vector<Point2>& points);
ElementBasisValues eval_element_basis(const ElementBasis& basis,
                                      const QuadratureRule& rule);

/// Monomials s^j, j = 0..degree, in the arclength parameter s in [-1, 1] of
/// the edge's stored endpoint order. Interior edges have one stored copy, so
/// both adjacent elements see identical basis values.
struct EdgeBasis {
  int degree = 0;
  Point2 p0, p1; ///< stored endpoints

  static EdgeBasis make(const Mesh& mesh, int edge_id, int degree);
  std::size_t size() const { return static_cast<std::size_t>(degree) + 1; }
  Point2 point_at(double s) const { return 0.5 * (p0 + p1) + (0.5 * s) * (p1 - p0); }
};

/// values(j, q) = s_q^j.
Eigen::MatrixXd eval_edge_basis(const EdgeBasis& basis, const std::vector<double>& params);

} // namespace pdwg
