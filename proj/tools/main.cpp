#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "motwave/errors.hpp"
#include "run_config.hpp"

namespace {

using motwave::cli::RunConfig;

struct FlagSet {
  std::optional<std::string> config, out, format, sweep;
  std::optional<int> m, m_max, grid, modes;
  std::optional<double> s_max, ds, tol;
};

void add_common_flags(CLI::App* sub, FlagSet& flags) {
  sub->add_option("--config", flags.config, "key = value config file (strict keys)");
  sub->add_option("--out", flags.out, "output directory");
  sub->add_option("--m", flags.m, "symmetry fold / lower mode bound");
  sub->add_option("--m-max", flags.m_max, "upper mode bound");
  sub->add_option("--s-max", flags.s_max, "final pinned amplitude");
  sub->add_option("--ds", flags.ds, "initial continuation step");
  sub->add_option("--grid", flags.grid, "grid size (power of two >= 16)");
  sub->add_option("--modes", flags.modes, "retained mode truncation");
  sub->add_option("--tol", flags.tol, "residual tolerance");
  sub->add_option("--format", flags.format, "csv | json");
  sub->add_option("--sweep", flags.sweep, "comma-separated folds, run in parallel");
}

RunConfig build_config(const FlagSet& flags) {
  RunConfig cfg;
  if (flags.config) cfg.apply_file(*flags.config);
  if (flags.out) cfg.out_dir = *flags.out;
  if (flags.format) cfg.format = *flags.format;
  if (flags.sweep) cfg.sweep = motwave::cli::parse_sweep_list(*flags.sweep);
  if (flags.m) cfg.m = *flags.m;
  if (flags.m_max) cfg.m_max = *flags.m_max;
  if (flags.grid) cfg.grid = *flags.grid;
  if (flags.modes) cfg.modes = *flags.modes;
  if (flags.s_max) cfg.s_max = *flags.s_max;
  if (flags.ds) cfg.ds = *flags.ds;
  if (flags.tol) cfg.tol = *flags.tol;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motwave: spectral continuation of traveling waves in a cell-motility free-boundary model"};
  app.require_subcommand(1);

  FlagSet flags;
  std::string point_file;

  CLI::App* dispersion = app.add_subcommand("dispersion", "mode growth rates of the circular rest state");
  CLI::App* bifpoints = app.add_subcommand("bifurcation-points", "bifurcation values, transversality, kernel ranks");
  CLI::App* branch = app.add_subcommand("branch", "continue an m-fold traveling-wave branch");
  CLI::App* residual = app.add_subcommand("residual", "evaluate the residual of a user-supplied point");
  CLI::App* linearize = app.add_subcommand("linearize", "dump the trivial-point Jacobian as CSV");
  for (CLI::App* sub : {dispersion, bifpoints, branch, residual, linearize})
    add_common_flags(sub, flags);
  residual->add_option("point_file", point_file, "JSON point description")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return motwave::cli::exit_config;
  }

  try {
    const RunConfig cfg = build_config(flags);
    if (dispersion->parsed()) return motwave::cli::cmd_dispersion(cfg);
    if (bifpoints->parsed()) return motwave::cli::cmd_bifurcation_points(cfg);
    if (branch->parsed()) return motwave::cli::cmd_branch(cfg);
    if (residual->parsed()) return motwave::cli::cmd_residual(cfg, point_file);
    if (linearize->parsed()) return motwave::cli::cmd_linearize(cfg);
    std::cerr << "no subcommand\n";
    return motwave::cli::exit_config;
  } catch (const motwave::cli::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return motwave::cli::exit_config;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return motwave::cli::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return motwave::cli::exit_solver;
  }
}
