/// Command-line front end: list the built-in cases, run one solve, run a
/// convergence study, or export point-cloud data for plotting.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "pdwg/config.hpp"
#include "pdwg/runner.hpp"

namespace {

struct CliFlags {
  std::string config_path;
  std::string case_id;
  int k = 0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  std::string levels;
  std::string element;
  std::string out;
  std::string plot_out;
  int density = 0;
};

/// Registers the shared flags on one subcommand; config-file keys are the
/// defaults and explicitly passed flags override them.
void add_run_options(CLI::App* cmd, CliFlags& flags) {
  cmd->add_option("config", flags.config_path, "config file (key = value grammar)");
  cmd->add_option("--case", flags.case_id, "built-in case id");
  cmd->add_option("--k", flags.k, "polynomial order (1 or 2)")->check(CLI::Range(1, 2));
  cmd->add_option("--tau1", flags.tau1, "residual stabilizer weight");
  cmd->add_option("--tau2", flags.tau2, "multiplier scaling weight");
  cmd->add_option("--levels", flags.levels, "max level, range a..b, or comma list");
  cmd->add_option("--element", flags.element, "element kind: tri or rect")
      ->check(CLI::IsMember({"tri", "rect"}));
  cmd->add_option("--out", flags.out, "convergence CSV output path");
  cmd->add_option("--plot-out", flags.plot_out, "plot CSV output path");
  cmd->add_option("--density", flags.density, "plot samples per direction")
      ->check(CLI::PositiveNumber);
}

pdwg::RunConfig merge_config(const CLI::App* cmd, const CliFlags& flags) {
  pdwg::RunConfig cfg;
  if (!flags.config_path.empty()) cfg = pdwg::load_config(flags.config_path);
  if (cmd->count("--case")) cfg.case_id = flags.case_id;
  if (cmd->count("--k")) cfg.k = flags.k;
  if (cmd->count("--tau1")) cfg.tau1 = flags.tau1;
  if (cmd->count("--tau2")) cfg.tau2 = flags.tau2;
  if (cmd->count("--levels")) cfg.levels = pdwg::parse_levels(flags.levels);
  if (cmd->count("--element"))
    cfg.element_override = flags.element == "rect" ? pdwg::ElementKind::rectangle
                                                   : pdwg::ElementKind::triangle;
  if (cmd->count("--out")) cfg.out = flags.out;
  if (cmd->count("--plot-out")) cfg.plot_out = flags.plot_out;
  if (cmd->count("--density")) cfg.density = flags.density;
  return cfg;
}

void list_cases() {
  for (const pdwg::TestCase& tc : pdwg::builtin_cases())
    std::printf("%-22s %s\n", tc.id.c_str(), tc.description.c_str());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"primal-dual weak Galerkin solver for first-order transport"};
  app.require_subcommand(1);

  CLI::App* cmd_list = app.add_subcommand("list-cases", "print the built-in case catalog");

  CliFlags flags;
  CLI::App* cmd_solve = app.add_subcommand("solve", "solve at the finest configured level");
  add_run_options(cmd_solve, flags);
  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "solve every level and tabulate errors and rates");
  add_run_options(cmd_conv, flags);
  CLI::App* cmd_plot =
      app.add_subcommand("plot-export", "sample lambda0 element-wise into x,y,lambda0 rows");
  add_run_options(cmd_plot, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_list->parsed()) {
      list_cases();
    } else if (cmd_solve->parsed()) {
      std::cout << pdwg::format_solve_summary(pdwg::run_solve(merge_config(cmd_solve, flags)));
    } else if (cmd_conv->parsed()) {
      std::cout << pdwg::run_convergence(merge_config(cmd_conv, flags)).csv;
    } else if (cmd_plot->parsed()) {
      const pdwg::RunConfig cfg = merge_config(cmd_plot, flags);
      const std::string csv = pdwg::run_plot_export(cfg);
      if (cfg.plot_out.empty())
        std::cout << csv;
      else
        std::cout << "wrote " << cfg.plot_out << "\n";
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
