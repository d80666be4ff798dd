#pragma once

//==============================================================================
// Branch switching and amplitude continuation.
//
// At beta_m = 2/(m(m+1)) the trivial branch (disks, any beta) loses uniqueness
// along the single shape direction w^{m+1}. The solver parametrizes the
// emerging branch by the kernel amplitude: a_m is pinned to s, beta joins the
// unknowns, and the square Newton system pairs
//
//     cosine mode 0  <->  mu        (dilation)
//     cosine mode 1  <->  V         (speed)
//     cosine mode n  <->  a_n       (n on the fold lattice, n != m)
//     pinned a_m = s <->  beta,
//
// which mirrors how the free constants make the trivial linearization
// surjective. Stepping uses a secant predictor in (beta, V, mu, a) and plain
// step halving/growing between 0.25x and 2x of the initial ds.
//
// Every accepted point must pass the Newton tolerance on the solver grid and
// is re-checked on a 2x finer grid where the curvature term goes through the
// singular-integral quadrature instead of the Fourier multiplier
// (verify_branch) -- an end-to-end guard against multiplier-side bugs.
//==============================================================================

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "motwave/functional.hpp"
#include "motwave/geometry.hpp"
#include "motwave/spectral.hpp"

namespace motwave {

struct ContinuationConfig {
  int m = 2;                  // symmetry fold (>= 2)
  int M = 48;                 // highest retained shape mode
  int N = 256;                // solver grid
  double s_max = 0.05;        // final pinned amplitude
  double ds = 5e-4;           // initial step
  double newton_tol = 1e-11;  // residual sup-norm target
  int newton_max_iter = 25;
  double step_factor_min = 0.25;  // ds clamp, relative to the initial ds
  double step_factor_max = 2.0;
  double step_grow = 1.3;  // applied after fast convergence
  int fast_iter_limit = 4;
  double admissible_margin = 0.9;  // stop before the weighted norm reaches this

  // Diagnostic override of the starting beta (defaults to bifurcation_beta(m)).
  std::optional<double> beta_start;

  void validate() const;
  std::vector<int> modes() const { return fold_modes(m, M); }
};

struct BranchPoint {
  double s = 0.0;
  SolutionPoint point;
  int newton_iters = 0;
  double residual_verify = -1.0;  // filled by verify_branch
};

struct Branch {
  ContinuationConfig config;
  std::vector<BranchPoint> points;
  bool completed = false;
  std::string stop_reason;   // "completed" | "admissibility" | "step_failure"
  double failed_at = -1.0;   // s of the first unreachable step, when applicable
};

// One pinned-amplitude Newton solve (damped steps, analytic Jacobian).
// Throws convergence_error / singular_jacobian_error / degenerate_map_error.
SolutionPoint solve_at_amplitude(const ContinuationConfig& config, double s,
                                 const SolutionPoint& initial_guess, int* iters = nullptr);

// Full branch from s = ds towards s_max. A failure on the very first step is
// reported as a bifurcation-point misidentification (with kernel diagnostics);
// later failures terminate the branch and leave the partial result intact.
Branch continue_branch(const ContinuationConfig& config);

struct VerifyReport {
  double max_discrepancy = 0.0;
  std::vector<double> per_point;
};

// Contract for the independent re-evaluation of converged points.
inline constexpr double verify_residual_contract = 1e-8;

// Independent re-evaluation of one solution: 2x finer grid, curvature term
// through the quadrature Hilbert transform. Returns the residual sup-norm.
double verify_point(const SolutionPoint& point, const Grid& grid_hi);

// Annotates every BranchPoint::residual_verify and reports the maximum.
VerifyReport verify_branch(Branch& branch, const Grid& grid_hi);

// CSV export: header "s,beta,V,mu,a_m,residual_newton,residual_verify,iters",
// one row per point, 17 significant digits.
void write_branch_csv(std::ostream& os, const Branch& branch);

}  // namespace motwave
