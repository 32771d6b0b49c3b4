#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "pdwg/assembly.hpp"

namespace pdwg {

/// Solution of one discrete problem, scattered back to the named unknowns.
/// Constrained lambda_b entries are filled with their prescribed inflow
/// values, so the blocks can be evaluated without consulting the dof map.
struct Solution {
  Eigen::VectorXd lambda0;    ///< n_elements * dim0, element-blocked
  Eigen::VectorXd lambdab;    ///< n_edges * dimb, edge-blocked
  Eigen::VectorXd u;          ///< n_elements * dimu, element-blocked
  double residual_norm = 0.0; ///< ||A x - rhs||_2 / max(||rhs||_2, 1)
  int n_free = 0;
};

/// Direct sparse LU solve of A x = rhs (the factorization pivots, so the
/// symmetric indefinite saddle structure is handled robustly). Throws
/// std::runtime_error on a singular factorization (reporting the solver's
/// diagnostic) or when the relative residual exceeds 1e-10.
Eigen::VectorXd solve_sparse(const Eigen::SparseMatrix<double>& A,
                             const Eigen::VectorXd& rhs);

/// Solves the assembled saddle system and expands the free-dof vector into
/// the full coefficient blocks.
Solution factor_solve(const AssembledProblem& problem);

/// Assemble-and-solve convenience wrapper.
Solution solve_case(const Mesh& mesh, const SchemeParams& params, const TestCase& tc);

} // namespace pdwg
