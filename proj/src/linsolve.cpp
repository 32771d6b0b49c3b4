#include "pdwg/linsolve.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pdwg {

Eigen::VectorXd solve_sparse(const Eigen::SparseMatrix<double>& A,
                             const Eigen::VectorXd& rhs) {
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "sparse LU factorization failed";
    const std::string detail = lu.lastErrorMessage();
    if (!detail.empty()) msg << ": " << detail;
    throw std::runtime_error(msg.str());
  }
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("sparse LU back-substitution failed");

  const double residual = (A * x - rhs).norm() / std::max(rhs.norm(), 1.0);
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "linear solve residual " << residual << " exceeds the 1e-10 contract";
    throw std::runtime_error(msg.str());
  }
  return x;
}

Solution factor_solve(const AssembledProblem& problem) {
  const DofMap& dm = problem.dofs;
  const Eigen::VectorXd x = solve_sparse(problem.A, problem.rhs);

  Solution sol;
  sol.n_free = dm.n_free;
  sol.residual_norm =
      (problem.A * x - problem.rhs).norm() / std::max(problem.rhs.norm(), 1.0);

  const auto raw_value = [&](int raw) {
    const int f = dm.free_index[raw];
    return f >= 0 ? x(f) : dm.constrained_value[raw];
  };

  sol.lambda0.resize(dm.n_elements * dm.dim0);
  for (int i = 0; i < sol.lambda0.size(); ++i) sol.lambda0(i) = raw_value(i);

  const int b0 = dm.n_elements * dm.dim0;
  sol.lambdab.resize(dm.n_edges * dm.dimb);
  for (int i = 0; i < sol.lambdab.size(); ++i) sol.lambdab(i) = raw_value(b0 + i);

  const int u0 = b0 + dm.n_edges * dm.dimb;
  sol.u.resize(dm.n_elements * dm.dimu);
  for (int i = 0; i < sol.u.size(); ++i) sol.u(i) = raw_value(u0 + i);
  return sol;
}

Solution solve_case(const Mesh& mesh, const SchemeParams& params, const TestCase& tc) {
  return factor_solve(assemble_problem(mesh, params, tc));
}

} // namespace pdwg
