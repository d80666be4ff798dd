#pragma once

// Test-side oracles, kept independent of the implementation paths they check:
//   * Fourier coefficients by plain high-resolution trapezoid quadrature
//   * parametric curvature det(g', g'')/|g'|^3 by 4th-order finite differences
//   * Jacobian columns by central finite differences of the residual
//   * deterministic random admissible shapes

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "motwave/functional.hpp"
#include "motwave/geometry.hpp"
#include "motwave/spectral.hpp"

namespace oracles {

// (1/pi) integral f cos(k theta) (k >= 1), mean for k = 0; trapezoid at n_quad
// points, no reuse of the library projection.
inline double fourier_cos_coeff(const std::function<double(double)>& f, int k, int n_quad = 4096) {
  double sum = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double theta = motwave::two_pi * j / n_quad;
    sum += f(theta) * std::cos(k * theta);
  }
  return (k == 0 ? 1.0 : 2.0) * sum / n_quad;
}

// Curvature of the sampled closed curve via 4th-order central differences of
// the parametrization; matches kappa[phi] up to O(h^4).
inline std::vector<double> fd_curvature(const std::vector<std::complex<double>>& pos) {
  const int n = static_cast<int>(pos.size());
  const double h = motwave::two_pi / n;
  std::vector<double> out(pos.size());
  auto at = [&](int j) { return pos[((j % n) + n) % n]; };
  for (int j = 0; j < n; ++j) {
    const std::complex<double> d1 =
        (8.0 * (at(j + 1) - at(j - 1)) - (at(j + 2) - at(j - 2))) / (12.0 * h);
    const std::complex<double> d2 =
        (-(at(j + 2) + at(j - 2)) + 16.0 * (at(j + 1) + at(j - 1)) - 30.0 * at(j)) /
        (12.0 * h * h);
    const double det = (std::conj(d1) * d2).imag();
    const double speed = std::abs(d1);
    out[static_cast<size_t>(j)] = det / (speed * speed * speed);
  }
  return out;
}

// Central finite difference of one residual derivative.
inline Eigen::VectorXd fd_jacobian_column(const motwave::SolutionPoint& p, const motwave::Grid& grid,
                                          int row_max, const std::function<motwave::SolutionPoint(double)>& perturb,
                                          double eps = 1e-6) {
  const motwave::SolutionPoint plus = perturb(eps);
  const motwave::SolutionPoint minus = perturb(-eps);
  const motwave::CosineSeries fp =
      motwave::evaluate_residual(plus.beta, plus.V, plus.shape, grid);
  const motwave::CosineSeries fm =
      motwave::evaluate_residual(minus.beta, minus.V, minus.shape, grid);
  Eigen::VectorXd col(row_max + 1);
  for (int r = 0; r <= row_max; ++r) col[r] = (fp.coeff(r) - fm.coeff(r)) / (2.0 * eps);
  return col;
}

inline motwave::ShapeCoeffs random_shape(std::mt19937& rng, int max_mode = 8, double target_norm = 0.3,
                                         int fold = 1) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  motwave::ShapeCoeffs shape;
  shape.symmetry_fold = fold;
  shape.mu = 0.1 * unit(rng);
  const int start = fold > 1 ? fold : 2;
  const int step = fold > 1 ? fold : 1;
  for (int n = start; n <= max_mode; n += step)
    shape.set_coeff(n, unit(rng) / ((n + 1.0) * (n + 1.0)));
  const double norm = shape.weighted_norm();
  if (norm > target_norm) {
    const double scale = target_norm / norm;
    shape.mu *= scale;
    for (int n = start; n <= max_mode; n += step) shape.set_coeff(n, shape.coeff(n) * scale);
  }
  return shape;
}

}  // namespace oracles
