#pragma once

// Run configuration for the motwave command line: defaults, a strict
// key = value config file, and flag overrides layered on top.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motwave/linear_analysis.hpp"

namespace motwave::cli {

class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  PhysicalParams params;        // dispersion parameters; defaults are the
                                // normalized rest-compatible set, gamma = 0
  std::optional<double> beta;   // explicit beta (linearize)
  int m = 2;                    // fold / lower mode bound
  int m_max = 8;
  int modes = 0;                // 0 = per-command default
  int grid = 256;
  double s_max = 0.05;
  double ds = 5e-4;
  double tol = 1e-11;
  std::string out_dir = ".";
  std::string format = "csv";
  std::vector<int> sweep;

  // Applies `key = value` lines ('#' comments allowed). Unknown keys and
  // malformed values are rejected with the offending key in the message.
  void apply_file(const std::string& path);

  void check() const;  // cross-field validation, throws config_error
};

// "2,3,5" -> {2,3,5}; rejects junk.
std::vector<int> parse_sweep_list(const std::string& text);

}  // namespace motwave::cli
