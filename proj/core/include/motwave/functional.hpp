#pragma once

//==============================================================================
// Traveling-wave residual on the fixed boundary and its analytic Jacobian.
//
// For phi(w) = (1 + mu) w + f(w) the residual of a wave translating at
// horizontal speed V with normalized surface tension beta is
//
//   R(theta) = Re[ V w phi'
//                  + (beta/4) DN[kappa[phi]]
//                  - (1/4)    DN[|phi|^2]
//                  + (1/2) w conj(phi) phi'
//                  - (1/2) |phi'| ],
//
// where DN is the Dirichlet-Neumann multiplier (d/dtheta of the Hilbert
// transform). The pointwise fields kappa and |phi|^2 are sampled on the grid,
// projected, hit with the exact multiplier, and resampled; only outer products
// ever touch the grid, so the singular operator itself is exact. R is an even
// function of theta for real coefficient shapes; its projection is reported as
// a pure cosine series and any stray sine content is a discretization bug, not
// a modelling effect.
//
// Directional derivatives (columns of the Jacobian) are assembled from the
// same pipeline applied to the closed-form linearizations of each term.
//==============================================================================

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "motwave/geometry.hpp"
#include "motwave/spectral.hpp"

namespace motwave {

struct SolutionPoint {
  double beta = 0.0;
  double V = 0.0;
  ShapeCoeffs shape;
  double residual_norm = -1.0;  // sup |cosine coefficients|; negative = not yet evaluated
};

// Dense derivative of the residual coefficients with respect to (mu, V, a_n).
// Row r is cosine mode r, r = 0..row_max. The beta derivative is kept apart
// because continuation treats beta as the released parameter.
struct JacobianMatrix {
  Eigen::MatrixXd cols;        // (row_max+1) x (2 + #shape_modes)
  Eigen::VectorXd beta_col;    // (row_max+1)
  std::vector<int> shape_modes;
  int row_max = 0;

  static constexpr int col_mu = 0;
  static constexpr int col_V = 1;
  int col_of_mode(int n) const;           // -1 when absent
  std::vector<std::string> column_labels() const;
};

// Sine-content diagnostic threshold; breaches are reported through the
// optional out-parameter and a one-line stderr warning.
inline constexpr double sine_content_limit = 1e-12;

CosineSeries evaluate_residual(double beta, double V, const ShapeCoeffs& shape, const Grid& grid,
                               double* sine_content = nullptr);

// Sup-difference of residual coefficients between phi and phi + a (the
// translated map evaluated by direct sampling). Zero in exact arithmetic.
double translation_invariance_check(double beta, double V, const ShapeCoeffs& shape, double a,
                                    const Grid& grid);

// Analytic Jacobian columns (mu, V, a_n for n in shape_modes), rows 0..row_max.
JacobianMatrix residual_jacobian(const SolutionPoint& point, const Grid& grid, int row_max,
                                 const std::vector<int>& shape_modes);

// Shape-mode lattice {fold, 2 fold, ...} capped at max_mode (all of 2..max_mode
// when fold == 1).
std::vector<int> fold_modes(int fold, int max_mode);

}  // namespace motwave
