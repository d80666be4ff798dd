#include "motwave/linear_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace motwave {

PhysicalParams PhysicalParams::normalized(double beta) {
  PhysicalParams p;
  p.xi = 1.0;
  p.k_d = 1.0;
  p.v_p = 0.5;
  p.R0 = 1.0;
  p.gamma = beta / 4.0;
  return p;
}

bool PhysicalParams::rest_state_compatible(double rel_tol) const noexcept {
  const double lhs = k_d * R0, rhs = 2.0 * v_p;
  return std::abs(lhs - rhs) <= rel_tol * std::max(std::abs(lhs), std::abs(rhs));
}

void PhysicalParams::validate() const {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  if (!(k_d > 0.0)) throw std::invalid_argument("k_d must be > 0");
  if (!(v_p > 0.0)) throw std::invalid_argument("v_p must be > 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be >= 0 and finite");
  if (!(R0 > 0.0)) throw std::invalid_argument("R0 must be > 0");
}

double PhysicalParams::rest_pressure(double r) const noexcept {
  return 0.25 * k_d * (r * r - R0 * R0) + gamma / R0;
}

double growth_rate(int m, const PhysicalParams& params) {
  if (m < 0) throw std::invalid_argument("growth_rate: mode must be >= 0");
  params.validate();
  const double md = m;
  return 0.5 * params.k_d * (md - 1.0) -
         params.gamma / (params.R0 * params.R0 * params.R0) * md * (md * md - 1.0);
}

std::vector<int> unstable_modes(const PhysicalParams& params, int m_max) {
  if (m_max < 2) throw std::invalid_argument("unstable_modes: m_max must be >= 2");
  std::vector<int> out;
  for (int m = 2; m <= m_max; ++m)
    if (growth_rate(m, params) > 0.0) out.push_back(m);
  return out;
}

double bifurcation_beta(int m) {
  if (m < 2) throw std::invalid_argument("bifurcation_beta: mode must be >= 2");
  return 2.0 / (static_cast<double>(m) * (m + 1.0));
}

double transversality_coefficient(int m) {
  if (m < 2) throw std::invalid_argument("transversality_coefficient: mode must be >= 2");
  const double md = m;
  return 0.25 * md * (md + 1.0) * (md - 1.0);
}

CosineSeries apply_trivial_linearization(double beta, double lambda1, double lambda2,
                                         const ShapeCoeffs& h) {
  const int top = std::max(1, h.max_mode());
  CosineSeries out;
  out.coeffs.assign(static_cast<size_t>(top) + 1, 0.0);
  out.coeffs[0] = 0.5 * lambda1;
  out.coeffs[1] = lambda2;
  for (int n = 2; n <= h.max_mode(); ++n) {
    const double an = h.coeff(n);
    if (an == 0.0) continue;
    const double nd = n;
    out.coeffs[n] = 0.25 * an * nd * (nd + 1.0) * (nd - 1.0) * (beta - bifurcation_beta(n));
  }
  return out;
}

SpectralReport kernel_analysis(double beta, int M, const Grid& grid, int symmetry_fold) {
  if (!(beta > 0.0)) throw std::invalid_argument("kernel_analysis: beta must be > 0");
  if (M < 2) throw std::invalid_argument("kernel_analysis: truncation must be >= 2");

  const std::vector<int> modes = fold_modes(symmetry_fold, M);
  if (modes.empty()) throw std::invalid_argument("kernel_analysis: empty mode lattice");

  SolutionPoint trivial;
  trivial.beta = beta;
  trivial.shape.symmetry_fold = symmetry_fold;
  const JacobianMatrix jac = residual_jacobian(trivial, grid, M, modes);

  // Retain the rows paired with unknowns: modes 0, 1 and the lattice.
  const int dim = 2 + static_cast<int>(modes.size());
  Eigen::MatrixXd square(dim, dim);
  square.row(0) = jac.cols.row(0);
  square.row(1) = jac.cols.row(1);
  for (size_t i = 0; i < modes.size(); ++i)
    square.row(2 + static_cast<int>(i)) = jac.cols.row(modes[i]);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(square, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();

  SpectralReport report;
  report.shape_modes = modes;
  report.sigma_max = sigma(0);
  report.sigma_min = sigma(dim - 1);
  const double cutoff = kernel_svd_threshold * sigma(0);
  for (int i = 0; i < dim; ++i)
    if (sigma(i) < cutoff) ++report.kernel_dim;

  if (report.kernel_dim == 1) {
    report.kernel_vector = svd.matrixV().col(dim - 1);
    // Identify the dominating a_n component.
    int best = -1;
    double best_mag = 0.0;
    for (size_t i = 0; i < modes.size(); ++i) {
      const double mag = std::abs(report.kernel_vector(2 + static_cast<int>(i)));
      if (mag > best_mag) {
        best_mag = mag;
        best = modes[i];
      }
    }
    report.mode = best;
    report.kernel_alignment = best_mag / report.kernel_vector.norm();
    if (best >= 2) {
      report.marginal_beta = bifurcation_beta(best);
      report.transversality_coeff = transversality_coefficient(best);
      report.growth_rate = growth_rate(best, PhysicalParams::normalized(beta));
    }
  }
  return report;
}

}  // namespace motwave
