#pragma once

#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Node of an element rule: physical location and weight. Weights of a rule
/// sum to the element area.
struct QuadratureNode {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
};
using QuadratureRule = std::vector<QuadratureNode>;

/// Node of an edge rule: physical location, weight, and the arclength
/// parameter s in [-1, 1] of the edge's stored endpoint order. Weights sum to
/// the edge length.
struct EdgeQuadratureNode {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double s = 0.0;
};
using EdgeQuadratureRule = std::vector<EdgeQuadratureNode>;

/// Gauss-Legendre rule on [-1, 1] with n points (exact to degree 2n-1).
/// Nodes are computed once per n and cached.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Symmetric positive-weight rule on a triangle, exact to total degree >=
/// degree_needed. Throws std::out_of_range beyond the table of implemented
/// rules (exactness 8).
QuadratureRule triangle_quadrature(Point2 v0, Point2 v1, Point2 v2, int degree_needed);

/// Tensor Gauss rule on an axis-aligned rectangle [lo.x, hi.x] x [lo.y, hi.y].
QuadratureRule rectangle_quadrature(Point2 lo, Point2 hi, int degree_needed);

/// Rule on a mesh element, dispatching on its kind.
QuadratureRule element_quadrature(const Mesh& mesh, int element_id, int degree_needed);

/// Gauss rule with ceil((degree_needed+1)/2) points mapped to the segment
/// p0 -> p1.
EdgeQuadratureRule edge_quadrature(Point2 p0, Point2 p1, int degree_needed);

/// Rule on a mesh edge, parameterized by its stored endpoint order.
EdgeQuadratureRule edge_quadrature(const Mesh& mesh, int edge_id, int degree_needed);

} // namespace pdwg
