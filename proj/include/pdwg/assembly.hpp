#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "pdwg/cases.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

/// Discretization parameters: polynomial order k of the primal trial space
/// and the two stabilization weights.
struct SchemeParams {
  int k = 1;
  double tau1 = 1.0;
  double tau2 = 1.0;
};

/// Global numbering of the coupled unknowns. Raw dofs are laid out as all
/// lambda0 element blocks, then all lambda_b edge blocks, then all u element
/// blocks. Inflow-edge lambda_b dofs are constrained to the edgewise L2
/// projection of the inflow data and eliminated symmetrically; every other
/// dof is free.
struct DofMap {
  int k = 1;
  int dim0 = 0; ///< lambda0 dofs per element, dim P_k
  int dimb = 0; ///< lambda_b dofs per edge, k + 1
  int dimu = 0; ///< u dofs per element, dim P_{k-1}
  int n_elements = 0;
  int n_edges = 0;
  int n_raw = 0;
  int n_free = 0;
  std::vector<int> free_index;           ///< raw -> free index, -1 if constrained
  std::vector<double> constrained_value; ///< raw-indexed; zero on free dofs

  int lambda0_raw(int element_id, int i) const { return element_id * dim0 + i; }
  int lambdab_raw(int edge_id, int j) const {
    return n_elements * dim0 + edge_id * dimb + j;
  }
  int u_raw(int element_id, int m) const {
    return n_elements * dim0 + n_edges * dimb + element_id * dimu + m;
  }
  bool is_constrained(int raw) const { return free_index[raw] < 0; }
};

DofMap build_dof_map(const Mesh& mesh, const SchemeParams& params, const TestCase& tc);

/// One element's contribution. Local lambda columns are the P_k interior
/// coefficients followed by the k+1 trace coefficients of each edge in
/// element edge order (matching the weak-gradient operator layout).
///
/// The element rows of the coupled system read
///   S lambda + B^T u = f_sigma   (lambda-type test functions)
///   B lambda - D u   = f_v       (u-type test functions)
/// with S the stabilizer (edge jump term scaled by 1/h_T plus tau1 times the
/// residual term), B the weak-convection coupling (beta . grad_w - c),
/// D = tau2 h_T^2 M_{k-1}, and f_sigma carrying tau1 (f, beta.grad - c)_T on
/// the interior block only.
struct LocalSystem {
  Eigen::MatrixXd S;
  Eigen::MatrixXd B;
  Eigen::MatrixXd D;
  Eigen::VectorXd f_sigma;
  Eigen::VectorXd f_v;
  std::vector<int> lambda_raw; ///< raw dof ids of the lambda columns
  std::vector<int> u_raw;      ///< raw dof ids of the u columns
};

LocalSystem assemble_local(const Mesh& mesh, int element_id, const SchemeParams& params,
                           const TestCase& tc, const DofMap& dofs);

/// The reduced saddle-point system over free dofs,
///   [ S  B^T ] [lambda]   [f_sigma]
///   [ B  -D  ] [  u   ] = [  f_v  ],
/// with constrained lambda_b columns moved to the right-hand side and the
/// matching test rows dropped. A is exactly symmetric.
struct AssembledProblem {
  DofMap dofs;
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd rhs;
};

AssembledProblem assemble_problem(const Mesh& mesh, const SchemeParams& params,
                                  const TestCase& tc);

} // namespace pdwg
