#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdwg/cases.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

/// Everything one run needs: the case (by id or defined inline), the scheme
/// parameters, the refinement levels, and the output targets.
struct RunConfig {
  std::string case_id;
  std::optional<TestCase> inline_case;
  int k = 1;
  double tau1 = 1.0;
  double tau2 = 1.0;
  std::vector<int> levels = {0, 1, 2, 3, 4, 5};
  std::optional<ElementKind> element_override;
  std::string out;      ///< convergence-table CSV path; empty = stdout only
  std::string plot_out; ///< point-cloud CSV path; empty = stdout only
  int density = 3;      ///< plot samples per direction within each element
};

/// Parse failure with the 1-based line it occurred on (0 for file-level
/// problems such as a missing required key).
struct ConfigError : std::runtime_error {
  int line = 0;
  ConfigError(int line_, const std::string& what_)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + what_
                                     : what_),
        line(line_) {}
};

/// Parses the flat key=value grammar with an optional single [case] section.
///
/// Global keys: case, k, tau1, tau2, levels, element (tri|rect), out,
/// plot_out, density. `levels` accepts a single maximum level ("5" means
/// 0..5), a range ("2..5"), or a comma list ("0,1,3"). `#` starts a comment.
///
/// [case] keys: id, domain (unit_square|l_shape|cracked_square), element,
/// beta, c, lambda, f, g. Expression values use the closed-form catalog:
///   const v | coscos a b | sincos a b | expcos a b | poly i j c [i j c ...]
/// for scalars, `const2 bx by | rot cx cy` for vectors, and
///   split a b d | <expr-in> | <expr-out>
/// to switch expressions across the half-plane a x + b y < d.
///
/// Unknown keys, unknown sections, malformed values, and out-of-domain
/// values (k outside {1,2}, density < 1, empty or non-increasing levels)
/// raise ConfigError. Negative tau values are accepted with a warning on
/// stderr.
RunConfig parse_config(const std::string& text);

/// Reads and parses a config file; throws std::runtime_error when the file
/// cannot be read.
RunConfig load_config(const std::string& path);

/// Parses the `levels` grammar on its own (shared with the --levels flag).
std::vector<int> parse_levels(const std::string& text);

} // namespace pdwg
