#pragma once

//==============================================================================
// Fourier-side primitives on the unit circle.
//
// Conventions used throughout:
//   * Grid: N equispaced angles theta_j = 2*pi*j/N, N a power of two >= 16.
//   * TrigSeries holds real coefficients of sum_k c_k cos(k theta) + s_k sin(k theta),
//     k = 0..M with M <= N/2 - 1 (the Nyquist mode is never retained).
//   * Hilbert transform acts as the exact Fourier multiplier
//       const -> 0,  cos(k.) -> sin(k.),  sin(k.) -> -cos(k.)   (k >= 1),
//     i.e. the boundary relation between harmonic conjugates on the disk.
//   * dirichlet_neumann = d/dtheta . Hilbert: multiplication of mode k by k.
//
// The singular-integral quadrature (cot((theta - s)/2) kernel, principal value)
// exists only as an independent cross-check of the multiplier rule; see
// hilbert_quadrature_oracle. Evaluated at half-grid points it is exact for
// all modes below N, so oracle comparisons are limited by roundoff alone.
//
// All transforms are plain O(N*M) sums against a precomputed table of the
// N-th roots of unity (index arithmetic is exact, no angle accumulation) with
// compensated summation, which keeps coefficient errors at a few ulp even
// after the mode-k amplification of the Dirichlet-Neumann multiplier.
//==============================================================================

#include <complex>
#include <memory>
#include <vector>

namespace motwave {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Equispaced angular grid theta_j = 2*pi*j/N. Cheap to copy; the root-of-unity
// table is shared and immutable.
class Grid {
public:
  explicit Grid(int n_points);

  int size() const noexcept { return n_; }
  int max_mode() const noexcept { return n_ / 2 - 1; }
  double theta(int j) const noexcept { return two_pi * j / n_; }
  double theta_mid(int j) const noexcept { return two_pi * (j + 0.5) / n_; }

  // e^{i theta_l}, l = 0..N-1
  const std::vector<std::complex<double>>& roots() const noexcept { return *roots_; }
  // root of unity at exponent k*j without angle accumulation
  std::complex<double> power(int k, int j) const noexcept;

  static bool valid_size(int n) noexcept;

private:
  int n_;
  std::shared_ptr<const std::vector<std::complex<double>>> roots_;
};

struct GridSamples {
  Grid grid;
  std::vector<double> values;
};

struct TrigSeries {
  std::vector<double> cos_coeffs;  // [k] multiplies cos(k theta); [0] is the mean
  std::vector<double> sin_coeffs;  // [k] multiplies sin(k theta); [0] kept at zero

  int max_mode() const noexcept { return static_cast<int>(cos_coeffs.size()) - 1; }
  static TrigSeries zero(int max_mode);
};

// Even (pure cosine) residual series.
struct CosineSeries {
  std::vector<double> coeffs;  // [k] multiplies cos(k theta)

  int max_mode() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  double coeff(int k) const noexcept {
    return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0.0;
  }
  double sup_norm() const noexcept;
};

// Discrete Fourier analysis of real samples; retains modes 0..N/2-1.
TrigSeries project(const GridSamples& samples);

// Same, for samples taken at theta_j + offset (used with half-grid data).
TrigSeries project_shifted(const GridSamples& samples, double offset);

GridSamples synthesize(const TrigSeries& series, const Grid& grid);

double eval_series(const TrigSeries& series, double theta);

TrigSeries hilbert(const TrigSeries& series);
TrigSeries deriv_theta(const TrigSeries& series);

// d/dtheta of the Hilbert transform: mode k scaled by k. This is the
// Dirichlet-to-Neumann multiplier of the harmonic extension to the disk.
TrigSeries dirichlet_neumann(const TrigSeries& series);

// Principal-value quadrature of the cot kernel at a single target angle.
// theta must stay clear of the sample nodes (half-grid midpoints are the
// intended targets); collisions are rejected. Test/verification use only.
double hilbert_quadrature_oracle(const GridSamples& samples, double theta);

// Batch form: quadrature values at every midpoint theta_mid(j). O(N^2) with a
// single kernel table.
GridSamples hilbert_quadrature_midpoints(const GridSamples& samples);

double sup_norm(const std::vector<double>& v);

}  // namespace motwave
