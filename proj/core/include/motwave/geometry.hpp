#pragma once

//==============================================================================
// Boundary representation through the conformal map
//
//     phi(w) = (1 + mu) w + sum_{n >= 2} a_n w^{n+1},   w = e^{i theta},
//
// with real coefficients a_n. Shape mode n produces angular wavenumber n in the
// derived scalar fields (curvature, residual), while the map itself carries the
// power w^{n+1}; keep the two indices apart when reading the code below.
//
// Modes 0 and 1 are excluded from the coefficient set: constants are killed by
// translation invariance of the driving functional and the first mode is a
// degenerate reparametrization direction.
//==============================================================================

#include <complex>
#include <iosfwd>
#include <vector>

#include "motwave/spectral.hpp"

namespace motwave {

struct ShapeCoeffs {
  double mu = 0.0;
  // a[n] multiplies w^{n+1}; slots 0 and 1 exist for direct indexing but must stay 0
  std::vector<double> a;
  int symmetry_fold = 1;

  static ShapeCoeffs single_mode(int n, double value, int fold = 1);

  double coeff(int n) const noexcept {
    return (n >= 0 && n < static_cast<int>(a.size())) ? a[n] : 0.0;
  }
  void set_coeff(int n, double value);
  int max_mode() const noexcept;  // highest n with a_n != 0; 0 when none

  // sum_n (n+1)|a_n| + |mu|; < 1 guarantees min |phi'| > 0
  double weighted_norm() const noexcept;
  // max over |mu| and |a_n|
  double sup_coeff_norm() const noexcept;

  bool respects_fold() const noexcept;
  bool is_admissible() const noexcept;
  void validate() const;  // throws std::invalid_argument on broken invariants
};

// Map data sampled on the grid: positions phi(w_j), derivatives in w, |phi'|.
struct BoundaryCurve {
  Grid grid;
  std::vector<std::complex<double>> positions;
  std::vector<std::complex<double>> d1;
  std::vector<std::complex<double>> d2;
  std::vector<double> jacobian;
};

inline constexpr double default_jacobian_floor = 1e-8;

// Throws degenerate_map_error when min_j |phi'(w_j)| <= jac_floor.
BoundaryCurve synthesize_boundary(const ShapeCoeffs& shape, const Grid& grid,
                                  double jac_floor = default_jacobian_floor);

// kappa_j = Re[1 + w phi''/phi'] / |phi'| at every node
GridSamples curvature(const BoundaryCurve& curve);

// n_j = -w phi'/|phi'| (unit modulus)
std::vector<std::complex<double>> outward_normal(const BoundaryCurve& curve);

// CSV export: header "theta,x,y,kappa", one row per node, 17 significant digits.
void write_shape_csv(std::ostream& os, const BoundaryCurve& curve, const GridSamples& kappa);

}  // namespace motwave
