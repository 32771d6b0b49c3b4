#pragma once

#include <vector>

#include "pdwg/cases.hpp"
#include "pdwg/linsolve.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

/// Error measures of one solve against the exact solution:
///   err_e0 = || lambda0 - Q0 lambda ||_{L2}        (element projections)
///   err_eb = (sum_T h_T || lambdab - Qb lambda ||^2_{dT})^{1/2}
///            (each edge counted once per adjacent element, with that
///             element's h_T weight)
///   err_eh = || u_h ||_{L2}                        (exact multiplier is 0)
/// plus two diagnostic norms of the scheme:
///   triple_Mh = (tau2 sum_T h_T^2 || u_h ||_T^2)^{1/2}
///   triple_Wh = (sum_T h_T^{-1} || e0 - eb ||^2_{dT}
///                + tau1 || beta.grad e0 - c e0 ||_T^2)^{1/2}
/// where (e0, eb) is the projection error pair above.
struct ErrorReport {
  int level = 0;
  int inv_h_label = 1;
  double err_e0 = 0.0;
  double err_eb = 0.0;
  double err_eh = 0.0;
  double triple_Wh = 0.0;
  double triple_Mh = 0.0;
};

/// Computes the report; throws std::invalid_argument when the case has no
/// exact solution.
ErrorReport error_norms(const Solution& sol, const TestCase& tc, const Mesh& mesh,
                        const SchemeParams& params);

/// One row of a convergence table. Rates are log2 of the successive error
/// ratio; the first row has no predecessor and stores NaN.
struct RateRow {
  int inv_h_label = 1;
  double err_e0 = 0.0;
  double rate_e0 = 0.0;
  double err_eb = 0.0;
  double rate_eb = 0.0;
  double err_eh = 0.0;
  double rate_eh = 0.0;
};
using RateTable = std::vector<RateRow>;

/// Builds the table from per-level reports (coarsest first). Throws
/// std::domain_error when a rate would divide by a nonpositive error.
RateTable convergence_rates(const std::vector<ErrorReport>& reports);

} // namespace pdwg
