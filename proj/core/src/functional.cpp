#include "motwave/functional.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <stdexcept>

namespace motwave {

namespace {

using cd = std::complex<double>;

// Dirichlet-Neumann multiplier applied to grid samples: project, scale mode k
// by k, resample.
std::vector<double> dn_on_grid(const GridSamples& samples) {
  return synthesize(dirichlet_neumann(project(samples)), samples.grid).values;
}

struct ResidualParts {
  CosineSeries cosine;
  double sine_content = 0.0;
};

// Shared core: assemble R from sampled map data. `positions` may carry a
// translation offset, which is why it is passed separately from the curve.
ResidualParts residual_from_fields(double beta, double V, const BoundaryCurve& curve,
                                   const std::vector<cd>& positions) {
  const Grid& grid = curve.grid;
  const int n = grid.size();

  GridSamples kappa = curvature(curve);
  GridSamples sq{grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) sq.values[j] = std::norm(positions[j]);

  const std::vector<double> dn_kappa = dn_on_grid(kappa);
  const std::vector<double> dn_sq = dn_on_grid(sq);

  GridSamples res{grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const cd w = grid.roots()[j];
    const double drive = (w * std::conj(positions[j]) * curve.d1[j]).real();
    res.values[j] = V * (w * curve.d1[j]).real() + 0.25 * beta * dn_kappa[j] -
                    0.25 * dn_sq[j] + 0.5 * drive - 0.5 * curve.jacobian[j];
  }

  const TrigSeries series = project(res);
  ResidualParts out;
  out.cosine.coeffs = series.cos_coeffs;
  out.sine_content = sup_norm(series.sin_coeffs);
  return out;
}

void warn_on_sine_breach(double sine_content) {
  if (sine_content > sine_content_limit) {
    std::cerr << "motwave: residual sine content " << sine_content
              << " exceeds " << sine_content_limit
              << " (even-symmetry violation; check grid resolution)\n";
  }
}

}  // namespace

int JacobianMatrix::col_of_mode(int n) const {
  for (size_t i = 0; i < shape_modes.size(); ++i)
    if (shape_modes[i] == n) return 2 + static_cast<int>(i);
  return -1;
}

std::vector<std::string> JacobianMatrix::column_labels() const {
  std::vector<std::string> labels{"mu", "V"};
  for (int n : shape_modes) labels.push_back("a" + std::to_string(n));
  return labels;
}

std::vector<int> fold_modes(int fold, int max_mode) {
  std::vector<int> modes;
  if (fold <= 1) {
    for (int n = 2; n <= max_mode; ++n) modes.push_back(n);
  } else {
    for (int n = fold; n <= max_mode; n += fold) modes.push_back(n);
  }
  return modes;
}

CosineSeries evaluate_residual(double beta, double V, const ShapeCoeffs& shape, const Grid& grid,
                               double* sine_content) {
  if (!std::isfinite(beta) || !std::isfinite(V))
    throw std::invalid_argument("evaluate_residual: non-finite parameter");
  const int top = shape.max_mode();
  if (top > 0 && grid.size() < 4 * (top + 2))
    throw std::invalid_argument("evaluate_residual: grid below the 4x dealiasing margin");

  const BoundaryCurve curve = synthesize_boundary(shape, grid);
  ResidualParts parts = residual_from_fields(beta, V, curve, curve.positions);
  if (sine_content) *sine_content = parts.sine_content;
  warn_on_sine_breach(parts.sine_content);
  return parts.cosine;
}

double translation_invariance_check(double beta, double V, const ShapeCoeffs& shape, double a,
                                    const Grid& grid) {
  const BoundaryCurve curve = synthesize_boundary(shape, grid);

  ResidualParts base = residual_from_fields(beta, V, curve, curve.positions);

  std::vector<cd> moved = curve.positions;
  for (auto& p : moved) p += a;
  ResidualParts shifted = residual_from_fields(beta, V, curve, moved);

  double sup = 0.0;
  for (int k = 0; k <= base.cosine.max_mode(); ++k)
    sup = std::max(sup, std::abs(base.cosine.coeffs[k] - shifted.cosine.coeffs[k]));
  return sup;
}

namespace {

// Direction data for one Jacobian column: h, h', h'' sampled on the grid.
struct Direction {
  std::vector<cd> h, dh, ddh;
};

Direction monomial_direction(const Grid& grid, int n) {
  // h = w^{n+1}
  const int N = grid.size();
  Direction d;
  d.h.resize(static_cast<size_t>(N));
  d.dh.resize(static_cast<size_t>(N));
  d.ddh.resize(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) {
    d.h[j] = grid.power(n + 1, j);
    d.dh[j] = (n + 1.0) * grid.power(n, j);
    d.ddh[j] = (n + 1.0) * n * grid.power(n - 1, j);
  }
  return d;
}

Direction dilation_direction(const Grid& grid) {
  // h = w: the mu derivative of phi
  const int N = grid.size();
  Direction d;
  d.h.assign(grid.roots().begin(), grid.roots().end());
  d.dh.assign(static_cast<size_t>(N), cd(1.0, 0.0));
  d.ddh.assign(static_cast<size_t>(N), cd(0.0, 0.0));
  return d;
}

// Gateaux derivative of the residual along h. The curvature linearization is
//   dkappa = -Re[conj(phi') h'] sigma / |phi'|^3
//            + Re[w (h'' phi' - h' phi'') / phi'^2] / |phi'|,
// with sigma = Re[1 + w phi''/phi'] = kappa |phi'|.
std::vector<double> directional_samples(double beta, double V, const BoundaryCurve& curve,
                                        const Direction& dir) {
  const Grid& grid = curve.grid;
  const int N = grid.size();

  GridSamples dkappa{grid, std::vector<double>(static_cast<size_t>(N))};
  GridSamples dsq{grid, std::vector<double>(static_cast<size_t>(N))};
  for (int j = 0; j < N; ++j) {
    const cd w = grid.roots()[j];
    const cd dp = curve.d1[j];
    const cd ddp = curve.d2[j];
    const double jac = curve.jacobian[j];
    const double sigma = 1.0 + (w * ddp / dp).real();
    const double dot = (std::conj(dp) * dir.dh[j]).real();
    dkappa.values[j] = -dot * sigma / (jac * jac * jac) +
                       (w * (dir.ddh[j] * dp - dir.dh[j] * ddp) / (dp * dp)).real() / jac;
    dsq.values[j] = (std::conj(curve.positions[j]) * dir.h[j]).real();
  }

  const std::vector<double> dn_dkappa = dn_on_grid(dkappa);
  const std::vector<double> dn_dsq = dn_on_grid(dsq);

  std::vector<double> out(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) {
    const cd w = grid.roots()[j];
    const cd dp = curve.d1[j];
    const double dot = (std::conj(dp) * dir.dh[j]).real();
    const double drive =
        (w * (std::conj(dir.h[j]) * dp + dir.dh[j] * std::conj(curve.positions[j]))).real();
    out[j] = V * (w * dir.dh[j]).real() + 0.25 * beta * dn_dkappa[j] - 0.5 * dn_dsq[j] +
             0.5 * drive - 0.5 * dot / curve.jacobian[j];
  }
  return out;
}

Eigen::VectorXd project_rows(const GridSamples& samples, int row_max) {
  const TrigSeries series = project(samples);
  Eigen::VectorXd col(row_max + 1);
  for (int r = 0; r <= row_max; ++r)
    col[r] = (r <= series.max_mode()) ? series.cos_coeffs[r] : 0.0;
  return col;
}

}  // namespace

JacobianMatrix residual_jacobian(const SolutionPoint& point, const Grid& grid, int row_max,
                                 const std::vector<int>& shape_modes) {
  if (row_max < 1 || row_max > grid.max_mode())
    throw std::invalid_argument("residual_jacobian: row_max outside grid range");
  const int top = point.shape.max_mode();
  if (top > 0 && grid.size() < 4 * (top + 2))
    throw std::invalid_argument("residual_jacobian: grid below the 4x dealiasing margin");
  // columns are bilinear in (phi, h): mode n + top + 2 must stay representable
  for (int n : shape_modes)
    if (n < 2 || n + top + 2 > grid.max_mode())
      throw std::invalid_argument("residual_jacobian: column mode outside representable range");

  const BoundaryCurve curve = synthesize_boundary(point.shape, grid);
  const int N = grid.size();

  JacobianMatrix jac;
  jac.row_max = row_max;
  jac.shape_modes = shape_modes;
  jac.cols.resize(row_max + 1, 2 + static_cast<int>(shape_modes.size()));

  jac.cols.col(JacobianMatrix::col_mu) = project_rows(
      {grid, directional_samples(point.beta, point.V, curve, dilation_direction(grid))}, row_max);

  // dR/dV = Re[w phi'] needs no multiplier work
  {
    GridSamples dv{grid, std::vector<double>(static_cast<size_t>(N))};
    for (int j = 0; j < N; ++j) dv.values[j] = (grid.roots()[j] * curve.d1[j]).real();
    jac.cols.col(JacobianMatrix::col_V) = project_rows(dv, row_max);
  }

  for (size_t i = 0; i < shape_modes.size(); ++i) {
    const Direction dir = monomial_direction(grid, shape_modes[i]);
    jac.cols.col(2 + static_cast<int>(i)) =
        project_rows({grid, directional_samples(point.beta, point.V, curve, dir)}, row_max);
  }

  // dR/dbeta = (1/4) DN[kappa]
  {
    GridSamples db{grid, dn_on_grid(curvature(curve))};
    for (double& v : db.values) v *= 0.25;
    jac.beta_col = project_rows(db, row_max);
  }
  return jac;
}

}  // namespace motwave
