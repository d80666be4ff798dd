#pragma once

#include <stdexcept>
#include <string>

namespace motwave {

// Conformal map lost injectivity margin: min |phi'| fell below the floor.
class degenerate_map_error : public std::runtime_error {
public:
  degenerate_map_error(double min_jacobian, double floor)
      : std::runtime_error("degenerate conformal map: min |phi'| = " +
                           std::to_string(min_jacobian) + " <= " + std::to_string(floor)),
        min_jacobian(min_jacobian) {}
  double min_jacobian;
};

// Newton iteration did not reach the residual tolerance.
class convergence_error : public std::runtime_error {
public:
  convergence_error(std::string what, int iterations, double residual)
      : std::runtime_error(std::move(what)), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Newton matrix numerically rank-deficient (reciprocal condition below threshold).
class singular_jacobian_error : public std::runtime_error {
public:
  explicit singular_jacobian_error(double rcond)
      : std::runtime_error("continuation Jacobian numerically singular: rcond = " +
                           std::to_string(rcond)),
        rcond(rcond) {}
  double rcond;
};

}  // namespace motwave
