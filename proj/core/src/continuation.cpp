#include "motwave/continuation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "motwave/errors.hpp"
#include "motwave/linear_analysis.hpp"
#include "motwave/numeric_io.hpp"

namespace motwave {

namespace {

constexpr double rcond_floor = 1e-14;  // condition estimate > 1e14 is treated as singular

// Unknown packing: x = [beta, V, mu, a_n (lattice, ascending, skipping the
// pinned mode m)]. Equations: cosine rows [0, 1, lattice...].
struct SystemLayout {
  std::vector<int> modes;       // full lattice, including m
  std::vector<int> free_modes;  // lattice without m
  int m = 0;
  int dim() const { return 2 + static_cast<int>(modes.size()); }
};

SystemLayout make_layout(const ContinuationConfig& cfg) {
  SystemLayout lay;
  lay.m = cfg.m;
  lay.modes = cfg.modes();
  for (int n : lay.modes)
    if (n != cfg.m) lay.free_modes.push_back(n);
  return lay;
}

ShapeCoeffs make_shape(const SystemLayout& lay, double s, double mu,
                       const Eigen::VectorXd& free_coeffs) {
  ShapeCoeffs shape;
  shape.symmetry_fold = lay.m;
  shape.mu = mu;
  shape.a.assign(static_cast<size_t>(lay.modes.back()) + 1, 0.0);
  shape.a[lay.m] = s;
  for (size_t i = 0; i < lay.free_modes.size(); ++i)
    shape.a[lay.free_modes[i]] = free_coeffs[static_cast<Eigen::Index>(i)];
  return shape;
}

Eigen::VectorXd pack(const SystemLayout& lay, const SolutionPoint& p) {
  Eigen::VectorXd x(2 + static_cast<int>(lay.free_modes.size()) + 1);
  x[0] = p.beta;
  x[1] = p.V;
  x[2] = p.shape.mu;
  for (size_t i = 0; i < lay.free_modes.size(); ++i)
    x[3 + static_cast<Eigen::Index>(i)] = p.shape.coeff(lay.free_modes[i]);
  return x;
}

SolutionPoint unpack(const SystemLayout& lay, double s, const Eigen::VectorXd& x) {
  SolutionPoint p;
  p.beta = x[0];
  p.V = x[1];
  p.shape = make_shape(lay, s, x[2], x.segment(3, static_cast<Eigen::Index>(lay.free_modes.size())));
  return p;
}

Eigen::VectorXd retained_rows(const SystemLayout& lay, const CosineSeries& series) {
  Eigen::VectorXd r(lay.dim());
  r[0] = series.coeff(0);
  r[1] = series.coeff(1);
  for (size_t i = 0; i < lay.modes.size(); ++i)
    r[2 + static_cast<Eigen::Index>(i)] = series.coeff(lay.modes[i]);
  return r;
}

}  // namespace

void ContinuationConfig::validate() const {
  if (m < 2) throw std::invalid_argument("continuation: symmetry fold must be >= 2");
  if (M < m) throw std::invalid_argument("continuation: truncation below the fold");
  if (!Grid::valid_size(N)) throw std::invalid_argument("continuation: N must be a power of two >= 16");
  if (N < 4 * (M + 2)) throw std::invalid_argument("continuation: N below the 4(M+2) dealiasing bound");
  if (!(ds > 0.0)) throw std::invalid_argument("continuation: ds must be > 0");
  if (!(s_max > 0.0)) throw std::invalid_argument("continuation: s_max must be > 0");
  // hard ball bound; the runtime margin stops a branch earlier and cleanly
  if (!(s_max * (m + 1.0) < 1.0))
    throw std::invalid_argument("continuation: s_max outside the admissible ball");
  if (!(admissible_margin > 0.0) || !(admissible_margin < 1.0))
    throw std::invalid_argument("continuation: admissible_margin must lie in (0, 1)");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("continuation: newton_tol must be > 0");
  if (newton_max_iter < 1) throw std::invalid_argument("continuation: newton_max_iter must be >= 1");
  if (!(step_factor_min > 0.0) || !(step_factor_max >= 1.0) || !(step_grow > 1.0))
    throw std::invalid_argument("continuation: malformed step adaptation factors");
  if (beta_start && !(*beta_start > 0.0))
    throw std::invalid_argument("continuation: beta_start must be > 0");
}

SolutionPoint solve_at_amplitude(const ContinuationConfig& config, double s,
                                 const SolutionPoint& initial_guess, int* iters) {
  config.validate();
  if (s == 0.0) throw std::invalid_argument("solve_at_amplitude: s must be nonzero");

  const SystemLayout lay = make_layout(config);
  const Grid grid(config.N);

  Eigen::VectorXd x = pack(lay, initial_guess);
  SolutionPoint current = unpack(lay, s, x);  // re-pins a_m = s

  CosineSeries residual = evaluate_residual(current.beta, current.V, current.shape, grid);
  double res_norm = residual.sup_norm();

  int used = 0;
  for (; used < config.newton_max_iter && res_norm > config.newton_tol; ++used) {
    const JacobianMatrix jac =
        residual_jacobian(current, grid, lay.modes.back(), lay.modes);

    Eigen::MatrixXd A(lay.dim(), lay.dim());
    std::vector<int> rows{0, 1};
    rows.insert(rows.end(), lay.modes.begin(), lay.modes.end());
    for (int r = 0; r < lay.dim(); ++r) {
      const int mode = rows[static_cast<size_t>(r)];
      A(r, 0) = jac.beta_col[mode];
      A(r, 1) = jac.cols(mode, JacobianMatrix::col_V);
      A(r, 2) = jac.cols(mode, JacobianMatrix::col_mu);
      for (size_t i = 0; i < lay.free_modes.size(); ++i)
        A(r, 3 + static_cast<Eigen::Index>(i)) = jac.cols(mode, jac.col_of_mode(lay.free_modes[i]));
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > rcond_floor)) throw singular_jacobian_error(rcond);

    const Eigen::VectorXd step = lu.solve(-retained_rows(lay, residual));

    // Damped update: accept the first step fraction that reduces the residual.
    bool accepted = false;
    double lambda = 1.0;
    for (int halvings = 0; halvings <= 8; ++halvings, lambda *= 0.5) {
      const Eigen::VectorXd x_trial = x + lambda * step;
      SolutionPoint trial = unpack(lay, s, x_trial);
      if (!trial.shape.is_admissible()) continue;
      CosineSeries trial_res;
      try {
        trial_res = evaluate_residual(trial.beta, trial.V, trial.shape, grid);
      } catch (const degenerate_map_error&) {
        continue;
      }
      const double trial_norm = trial_res.sup_norm();
      if (trial_norm < res_norm) {
        x = x_trial;
        current = std::move(trial);
        residual = std::move(trial_res);
        res_norm = trial_norm;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw convergence_error("newton step rejected after 8 halvings", used + 1, res_norm);
  }

  if (res_norm > config.newton_tol)
    throw convergence_error("newton did not reach tolerance", used, res_norm);

  current.residual_norm = res_norm;
  if (iters) *iters = used;
  return current;
}

Branch continue_branch(const ContinuationConfig& config) {
  config.validate();
  const SystemLayout lay = make_layout(config);
  const double beta0 = config.beta_start.value_or(bifurcation_beta(config.m));

  Branch branch;
  branch.config = config;

  const double ds_min = config.step_factor_min * config.ds;
  const double ds_max = config.step_factor_max * config.ds;
  double ds = config.ds;
  double s = 0.0;

  while (s < config.s_max) {
    double s_next = s + ds;
    if (s_next > config.s_max || std::abs(config.s_max - s_next) < 0.25 * ds_min)
      s_next = config.s_max;

    // Predictor: kernel direction off the trivial solution for the first
    // point, secant extrapolation afterwards.
    SolutionPoint guess;
    if (branch.points.empty()) {
      guess.beta = beta0;
      guess.V = 0.0;
      guess.shape = make_shape(lay, s_next, 0.0,
                               Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lay.free_modes.size())));
    } else if (branch.points.size() == 1) {
      guess = branch.points.back().point;
      guess.shape.a[lay.m] = s_next;
    } else {
      const auto& pk = branch.points[branch.points.size() - 1];
      const auto& pk1 = branch.points[branch.points.size() - 2];
      const Eigen::VectorXd xk = pack(lay, pk.point);
      const Eigen::VectorXd xk1 = pack(lay, pk1.point);
      const double t = (s_next - pk.s) / (pk.s - pk1.s);
      guess = unpack(lay, s_next, xk + t * (xk - xk1));
    }

    if (guess.shape.weighted_norm() >= config.admissible_margin) {
      branch.completed = true;
      branch.stop_reason = "admissibility";
      return branch;
    }

    try {
      int iters = 0;
      SolutionPoint solved = solve_at_amplitude(config, s_next, guess, &iters);
      branch.points.push_back({s_next, std::move(solved), iters, -1.0});
      s = s_next;
      if (iters <= config.fast_iter_limit) ds = std::min(ds * config.step_grow, ds_max);
    } catch (const std::exception& e) {
      if (branch.points.empty()) {
        // The very first step refusing to converge means the starting beta is
        // not a simple bifurcation point; attach kernel diagnostics.
        const SpectralReport rep = kernel_analysis(beta0, config.M, Grid(config.N), config.m);
        throw convergence_error(
            "first continuation step failed at beta = " + format_shortest(beta0) +
                " (kernel dimension there: " + std::to_string(rep.kernel_dim) +
                "; expected 1 at a simple bifurcation point): " + e.what(),
            0, -1.0);
      }
      if (ds * 0.5 < ds_min) {
        branch.completed = false;
        branch.stop_reason = "step_failure";
        branch.failed_at = s_next;
        return branch;
      }
      ds *= 0.5;
    }
  }

  branch.completed = true;
  branch.stop_reason = "completed";
  return branch;
}

double verify_point(const SolutionPoint& point, const Grid& grid_hi) {
  const BoundaryCurve curve = synthesize_boundary(point.shape, grid_hi);
  const Grid& grid = grid_hi;
  const int n = grid.size();

  // Curvature term through the singular-integral route: quadrature values at
  // the midpoints, shifted projection, exact d/dtheta, resample.
  const GridSamples kappa = curvature(curve);
  const GridSamples hk = hilbert_quadrature_midpoints(kappa);
  const TrigSeries hk_series = project_shifted(hk, grid.theta_mid(0));
  const std::vector<double> dn_kappa = synthesize(deriv_theta(hk_series), grid).values;

  GridSamples sq{grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) sq.values[j] = std::norm(curve.positions[j]);
  const std::vector<double> dn_sq =
      synthesize(dirichlet_neumann(project(sq)), grid).values;

  GridSamples res{grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const std::complex<double> w = grid.roots()[j];
    const double drive = (w * std::conj(curve.positions[j]) * curve.d1[j]).real();
    res.values[j] = point.V * (w * curve.d1[j]).real() + 0.25 * point.beta * dn_kappa[j] -
                    0.25 * dn_sq[j] + 0.5 * drive - 0.5 * curve.jacobian[j];
  }

  const TrigSeries series = project(res);
  return std::max(sup_norm(series.cos_coeffs), sup_norm(series.sin_coeffs));
}

VerifyReport verify_branch(Branch& branch, const Grid& grid_hi) {
  VerifyReport report;
  report.per_point.reserve(branch.points.size());
  for (auto& bp : branch.points) {
    bp.residual_verify = verify_point(bp.point, grid_hi);
    report.per_point.push_back(bp.residual_verify);
    report.max_discrepancy = std::max(report.max_discrepancy, bp.residual_verify);
  }
  return report;
}

void write_branch_csv(std::ostream& os, const Branch& branch) {
  os << "s,beta,V,mu,a_m,residual_newton,residual_verify,iters\n";
  for (const auto& bp : branch.points) {
    os << format_sig17(bp.s) << ',' << format_sig17(bp.point.beta) << ','
       << format_sig17(bp.point.V) << ',' << format_sig17(bp.point.shape.mu) << ','
       << format_sig17(bp.point.shape.coeff(branch.config.m)) << ','
       << format_sig17(bp.point.residual_norm) << ',' << format_sig17(bp.residual_verify) << ','
       << bp.newton_iters << '\n';
  }
}

}  // namespace motwave
