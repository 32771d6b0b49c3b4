#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "pdwg/basis.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

using ScalarFn = std::function<double(Point2)>;

/// Local dofs of a weak function on element T are ordered as the P_k interior
/// coefficients followed by the P_k(e) edge coefficients, edge by edge in the
/// element's edge order. Interior edges keep a single coefficient set shared
/// by both adjacent elements.
inline int local_weak_dofs(const Element& elem, int k) {
  return poly_space_dim(k) + static_cast<int>(elem.edge_ids.size()) * (k + 1);
}

/// Mass matrix of the scaled monomial basis of P_degree(T). The default rule
/// (exactness 2*degree+4) integrates it exactly.
Eigen::MatrixXd element_mass_matrix(const Mesh& mesh, int element_id, int degree,
                                    int quad_degree = -1);

/// Mass matrix of the s^j basis on an edge.
Eigen::MatrixXd edge_mass_matrix(const Mesh& mesh, int edge_id, int degree,
                                 int quad_degree = -1);

/// Coefficients of the L2(T) projection of f onto P_degree(T): solves the
/// local mass system with load (f, phi_i)_T. quad_degree overrides the
/// default integration exactness 2*degree+4 (the override matters only for
/// transcendental f; polynomials of degree <= degree+4 are handled exactly).
Eigen::VectorXd l2_project_element(const ScalarFn& f, const Mesh& mesh, int element_id,
                                   int degree, int quad_degree = -1);

/// Coefficients of the L2(e) projection of g onto P_degree(e).
Eigen::VectorXd l2_project_edge(const ScalarFn& g, const Mesh& mesh, int edge_id,
                                int degree, int quad_degree = -1);

/// Discrete weak gradient on one element at gradient degree r = k-1: the
/// matrices map local weak-function coefficients to the coefficients of the
/// two components of grad_w v in P_{k-1}(T), defined by
///   (grad_w v, psi)_T = -(v0, div psi)_T + <vb, psi.n>_{dT}
/// for all psi in [P_{k-1}(T)]^2. The [P_{k-1}]^2 mass system is two copies of
/// the scalar one; a single factorization serves both components.
struct WeakGradientTable {
  Eigen::MatrixXd gx; ///< (dim P_{k-1}) x n_local
  Eigen::MatrixXd gy;
};

WeakGradientTable weak_gradient_operator(const Mesh& mesh, int element_id, int k);

/// Weak gradient of an explicitly given pair {v0, vb} (vb evaluated on every
/// edge of the element); v0 need not lie in P_k. Returns the coefficient
/// vectors of the two components over the P_{k-1} basis.
std::pair<Eigen::VectorXd, Eigen::VectorXd> weak_gradient_of(
    const Mesh& mesh, int element_id, const ScalarFn& v0, const ScalarFn& vb, int k,
    int quad_degree = -1);

} // namespace pdwg
