#pragma once

// Subcommand implementations. Each returns the process exit code:
//   0 success, 1 solver/internal failure, 2 config/schema error,
//   3 tolerance breach.

#include <string>

#include "run_config.hpp"

namespace motwave::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_solver = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_tolerance = 3;

int cmd_dispersion(const RunConfig& cfg);
int cmd_bifurcation_points(const RunConfig& cfg);
int cmd_branch(const RunConfig& cfg);
int cmd_residual(const RunConfig& cfg, const std::string& point_file);
int cmd_linearize(const RunConfig& cfg);

}  // namespace motwave::cli
