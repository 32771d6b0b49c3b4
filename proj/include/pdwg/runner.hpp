#pragma once

#include <optional>
#include <string>

#include "pdwg/analysis.hpp"
#include "pdwg/config.hpp"
#include "pdwg/linsolve.hpp"

namespace pdwg {

/// The case a config names: the inline [case] definition when present,
/// otherwise the builtin with the configured id, with the element-kind
/// override applied on top. Throws std::invalid_argument when the config
/// names no case at all or an unknown id.
TestCase resolve_case(const RunConfig& cfg);

/// CSV rendering of a rate table. Header exactly
///   inv_h,err_e0,rate_e0,err_eb,rate_eb,err_eh,rate_eh
/// errors in scientific notation with 5 significant digits, rates with 4
/// decimals, rate cells empty on the first row. Byte-deterministic.
std::string format_rate_csv(const RateTable& table);

struct ConvergenceResult {
  std::vector<ErrorReport> reports;
  RateTable table;
  std::string csv;
};

/// Solves every configured level (coarsest first) and tabulates errors and
/// rates; the case must have an exact solution. Writes the CSV to
/// config.out when set. A solver failure aborts with the level in the
/// message.
ConvergenceResult run_convergence(const RunConfig& cfg);

/// One solve at the largest configured level.
struct SolveResult {
  TestCase tc;
  Mesh mesh;
  SchemeParams params;
  Solution solution;
  std::optional<ErrorReport> errors; ///< present when the case has an exact solution
};
SolveResult run_solve(const RunConfig& cfg);

/// Human-readable block of run facts for the solve subcommand.
std::string format_solve_summary(const SolveResult& res);

/// Samples lambda0 inside every element of the finest configured level on a
/// barycentric (triangles) or tensor (rectangles) lattice with `density`
/// points per direction, and renders rows `x,y,lambda0`. Writes to
/// config.plot_out when set.
std::string run_plot_export(const RunConfig& cfg);

} // namespace pdwg
