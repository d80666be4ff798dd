#pragma once

//==============================================================================
// Spectral analysis of the circular rest state.
//
// Mode m of a perturbed disk of radius R0 grows at
//
//   sigma_m = (k_d/2)(m - 1) - gamma R0^{-3} m (m^2 - 1)
//           = (m - 1) (k_d/2 - gamma R0^{-3} m (m + 1)),
//
// so under the normalization k_d = 2 v_p = xi = 1, beta = 4 gamma, mode m is
// marginal exactly at beta_m = 2/(m(m+1)). At that value the linearization of
// the traveling-wave residual around the trivial solution acquires a
// one-dimensional kernel along the a_m direction, and the mixed
// beta-derivative has the nonzero projection (1/4) m(m+1)(m-1) onto cos(m.) --
// the transversality coefficient that makes the branch switch well-posed.
//==============================================================================

#include <Eigen/Dense>
#include <vector>

#include "motwave/functional.hpp"
#include "motwave/geometry.hpp"
#include "motwave/spectral.hpp"

namespace motwave {

struct PhysicalParams {
  double xi = 1.0;     // substrate friction
  double k_d = 1.0;    // depolymerization rate (1/time)
  double v_p = 0.5;    // polymerization speed (length/time)
  double gamma = 0.0;  // surface tension
  double R0 = 1.0;     // rest radius

  // k_d = 2 v_p = xi = 1, R0 = 1, gamma = beta/4
  static PhysicalParams normalized(double beta);

  double beta() const noexcept { return k_d * gamma / (xi * v_p * v_p); }

  // Rest state exists only when depolymerization balances boundary growth.
  bool rest_state_compatible(double rel_tol = 1e-12) const noexcept;
  void validate() const;

  // Pressure of the circular rest state, P0(r) = (k_d/4)(r^2 - R0^2) + gamma/R0.
  // The additive constant is fixed by the capillary boundary condition
  // P = gamma * kappa = gamma/R0 on r = R0; only grad P0 enters any dynamics,
  // so the constant matters for documentation and tests alone.
  double rest_pressure(double r) const noexcept;
};

struct SpectralReport {
  int mode = -1;                  // detected kernel mode (-1: none)
  double growth_rate = 0.0;       // sigma_mode at normalized parameters
  double marginal_beta = 0.0;     // 2/(mode(mode+1)) for mode >= 2
  int kernel_dim = 0;
  double transversality_coeff = 0.0;
  Eigen::VectorXd kernel_vector;  // coordinates (mu, V, a_n...) when kernel_dim == 1
  std::vector<int> shape_modes;   // a_n ordering of kernel_vector
  double kernel_alignment = 0.0;  // |cosine| of angle with the pure a_mode axis
  double sigma_min = 0.0, sigma_max = 0.0;
};

double growth_rate(int m, const PhysicalParams& params);

// Strictly growing modes in [2, m_max]; 0 and 1 are excluded by construction
// (m = 0 decays at rate k_d/2, m = 1 is the neutral translation).
std::vector<int> unstable_modes(const PhysicalParams& params, int m_max);

double bifurcation_beta(int m);             // 2/(m(m+1)), m >= 2
double transversality_coefficient(int m);   // (1/4) m(m+1)(m-1), m >= 2

// Closed-form linearization at the trivial solution:
//   (1/2) lambda1 + lambda2 cos(theta)
//   + (1/4) sum_n a_n n(n+1)(n-1) (beta - beta_n) cos(n theta).
CosineSeries apply_trivial_linearization(double beta, double lambda1, double lambda2,
                                         const ShapeCoeffs& h);

// SVD rank probe of the discretized Jacobian at the trivial solution,
// restricted to the symmetry-fold lattice. Kernel detection threshold is
// 1e-10 relative to the largest singular value.
SpectralReport kernel_analysis(double beta, int M, const Grid& grid, int symmetry_fold = 1);

inline constexpr double kernel_svd_threshold = 1e-10;

}  // namespace motwave
