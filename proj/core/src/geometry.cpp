#include "motwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "motwave/errors.hpp"
#include "motwave/numeric_io.hpp"

namespace motwave {

ShapeCoeffs ShapeCoeffs::single_mode(int n, double value, int fold) {
  ShapeCoeffs s;
  s.symmetry_fold = fold;
  s.set_coeff(n, value);
  return s;
}

void ShapeCoeffs::set_coeff(int n, double value) {
  if (n < 2) throw std::invalid_argument("shape coefficients start at mode 2");
  if (n >= static_cast<int>(a.size())) a.resize(static_cast<size_t>(n) + 1, 0.0);
  a[n] = value;
}

int ShapeCoeffs::max_mode() const noexcept {
  for (int n = static_cast<int>(a.size()) - 1; n >= 2; --n)
    if (a[n] != 0.0) return n;
  return 0;
}

double ShapeCoeffs::weighted_norm() const noexcept {
  double s = std::abs(mu);
  for (int n = 2; n < static_cast<int>(a.size()); ++n) s += (n + 1) * std::abs(a[n]);
  return s;
}

double ShapeCoeffs::sup_coeff_norm() const noexcept {
  double s = std::abs(mu);
  for (int n = 2; n < static_cast<int>(a.size()); ++n) s = std::max(s, std::abs(a[n]));
  return s;
}

bool ShapeCoeffs::respects_fold() const noexcept {
  if (symmetry_fold <= 1) return true;
  for (int n = 2; n < static_cast<int>(a.size()); ++n)
    if (a[n] != 0.0 && n % symmetry_fold != 0) return false;
  return true;
}

bool ShapeCoeffs::is_admissible() const noexcept {
  if (!std::isfinite(mu)) return false;
  for (double x : a)
    if (!std::isfinite(x)) return false;
  if (a.size() > 0 && a[0] != 0.0) return false;
  if (a.size() > 1 && a[1] != 0.0) return false;
  return respects_fold() && weighted_norm() < 1.0;
}

void ShapeCoeffs::validate() const {
  if (symmetry_fold < 1) throw std::invalid_argument("symmetry_fold must be >= 1");
  if ((a.size() > 0 && a[0] != 0.0) || (a.size() > 1 && a[1] != 0.0))
    throw std::invalid_argument("shape modes 0 and 1 are excluded");
  if (!respects_fold())
    throw std::invalid_argument("shape has a coefficient off the symmetry-fold lattice");
  if (!is_admissible())
    throw std::invalid_argument("shape outside the admissible ball: sum (n+1)|a_n| + |mu| >= 1");
}

BoundaryCurve synthesize_boundary(const ShapeCoeffs& shape, const Grid& grid, double jac_floor) {
  shape.validate();
  const int n_pts = grid.size();
  const int top = shape.max_mode();
  if (top > 0 && grid.max_mode() < top + 1)
    throw std::invalid_argument("grid too coarse for the shape truncation");

  BoundaryCurve curve{grid, {}, {}, {}, {}};
  curve.positions.resize(static_cast<size_t>(n_pts));
  curve.d1.resize(static_cast<size_t>(n_pts));
  curve.d2.resize(static_cast<size_t>(n_pts));
  curve.jacobian.resize(static_cast<size_t>(n_pts));

  const double lead = 1.0 + shape.mu;
  double min_jac = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n_pts; ++j) {
    const std::complex<double> w = grid.roots()[j];
    std::complex<double> p = lead * w;
    std::complex<double> dp = lead;
    std::complex<double> ddp = 0.0;
    for (int n = 2; n <= top; ++n) {
      const double an = shape.a[n];
      if (an == 0.0) continue;
      p += an * grid.power(n + 1, j);
      dp += an * (n + 1.0) * grid.power(n, j);
      ddp += an * (n + 1.0) * n * grid.power(n - 1, j);
    }
    curve.positions[j] = p;
    curve.d1[j] = dp;
    curve.d2[j] = ddp;
    curve.jacobian[j] = std::abs(dp);
    min_jac = std::min(min_jac, curve.jacobian[j]);
  }
  if (!(min_jac > jac_floor)) throw degenerate_map_error(min_jac, jac_floor);
  return curve;
}

GridSamples curvature(const BoundaryCurve& curve) {
  const int n = curve.grid.size();
  GridSamples out{curve.grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) {
    const std::complex<double> w = curve.grid.roots()[j];
    const std::complex<double> ratio = w * curve.d2[j] / curve.d1[j];
    out.values[j] = (1.0 + ratio.real()) / curve.jacobian[j];
  }
  return out;
}

std::vector<std::complex<double>> outward_normal(const BoundaryCurve& curve) {
  const int n = curve.grid.size();
  std::vector<std::complex<double>> out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    out[j] = -curve.grid.roots()[j] * curve.d1[j] / curve.jacobian[j];
  return out;
}

void write_shape_csv(std::ostream& os, const BoundaryCurve& curve, const GridSamples& kappa) {
  os << "theta,x,y,kappa\n";
  for (int j = 0; j < curve.grid.size(); ++j) {
    os << format_sig17(curve.grid.theta(j)) << ',' << format_sig17(curve.positions[j].real())
       << ',' << format_sig17(curve.positions[j].imag()) << ',' << format_sig17(kappa.values[j])
       << '\n';
  }
}

}  // namespace motwave
