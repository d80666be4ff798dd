#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "motwave/functional.hpp"
#include "motwave/linear_analysis.hpp"
#include "oracles.hpp"

using namespace motwave;

TEST_CASE("trivial solution has zero residual for any beta") {
  const Grid grid(256);
  for (double beta : {0.1, 1.0 / 3.0, 1.0}) {
    double sine = 0.0;
    const CosineSeries r = evaluate_residual(beta, 0.0, ShapeCoeffs{}, grid, &sine);
    CHECK(r.sup_norm() < 1e-13);
    CHECK(sine < 1e-13);
  }
}

TEST_CASE("trivial-branch identity over random beta") {
  const Grid grid(256);
  std::mt19937 rng(5100);
  std::uniform_real_distribution<double> betas(0.01, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const CosineSeries r = evaluate_residual(betas(rng), 0.0, ShapeCoeffs{}, grid);
    CHECK(r.sup_norm() < 1e-13);
  }
}

TEST_CASE("pure dilation leaves the constant (1/2)(1+mu)mu") {
  const Grid grid(256);
  for (double mu : {-0.2, 0.1, 0.3}) {
    ShapeCoeffs s;
    s.mu = mu;
    const CosineSeries r = evaluate_residual(0.7, 0.0, s, grid);
    CHECK(r.coeff(0) == doctest::Approx(0.5 * (1.0 + mu) * mu).epsilon(1e-13));
    for (int k = 1; k <= r.max_mode(); ++k) CHECK(std::abs(r.coeff(k)) < 1e-13);
  }
  SUBCASE("the quoted value at mu = 0.1") {
    ShapeCoeffs s;
    s.mu = 0.1;
    const CosineSeries r = evaluate_residual(1.0, 0.0, s, grid);
    CHECK(r.coeff(0) == doctest::Approx(0.055).epsilon(1e-13));
  }
}

TEST_CASE("infinitesimal mode-2 bump reproduces the linearized coefficient") {
  // at beta = 1, n = 2: (1/4) n(n+1)(n-1)(beta - beta_n) = 1
  const Grid grid(256);
  const double eps = 1e-6;
  const CosineSeries r = evaluate_residual(1.0, 0.0, ShapeCoeffs::single_mode(2, eps), grid);
  CHECK(std::abs(r.coeff(2) - eps * 1.0) < 1e-10);

  const CosineSeries lin =
      apply_trivial_linearization(1.0, 0.0, 0.0, ShapeCoeffs::single_mode(2, eps));
  CHECK(std::abs(r.coeff(2) - lin.coeff(2)) < 1e-10);

  SolutionPoint trivial;
  trivial.beta = 1.0;
  const Eigen::VectorXd fd = oracles::fd_jacobian_column(
      trivial, grid, 4,
      [&](double e) {
        SolutionPoint p = trivial;
        p.shape = ShapeCoeffs::single_mode(2, e);
        return p;
      },
      eps);
  CHECK(std::abs(fd[2] - 1.0) < 1e-9);
}

TEST_CASE("residual stays even for random admissible shapes") {
  const Grid grid(256);
  std::mt19937 rng(5200);
  for (int trial = 0; trial < 20; ++trial) {
    const ShapeCoeffs s = oracles::random_shape(rng, 8, 0.4);
    double sine = 0.0;
    evaluate_residual(0.5, 0.3, s, grid, &sine);
    CHECK(sine < 1e-12);
  }
}

TEST_CASE("m-fold shapes close over the fold lattice (V = 0)") {
  const Grid grid(256);
  std::mt19937 rng(5300);
  for (int fold : {2, 3, 4}) {
    const ShapeCoeffs s = oracles::random_shape(rng, 4 * fold, 0.3, fold);
    const CosineSeries r = evaluate_residual(0.4, 0.0, s, grid);
    for (int k = 2; k <= r.max_mode(); ++k) {
      if (k % fold == 0) continue;
      CHECK(std::abs(r.coeff(k)) < 1e-12);
    }
  }
}

TEST_CASE("translation invariance") {
  const Grid grid(256);
  SUBCASE("unit disk, large shift") {
    CHECK(translation_invariance_check(0.8, 0.0, ShapeCoeffs{}, 0.3, grid) < 1e-11);
  }
  SUBCASE("zero shift is exactly zero") {
    std::mt19937 rng(5400);
    const ShapeCoeffs s = oracles::random_shape(rng, 6, 0.3);
    CHECK(translation_invariance_check(0.8, 0.2, s, 0.0, grid) == 0.0);
  }
  SUBCASE("100 random shapes") {
    std::mt19937 rng(5401);
    for (int trial = 0; trial < 100; ++trial) {
      const ShapeCoeffs s = oracles::random_shape(rng, 8, 0.4);
      CHECK(translation_invariance_check(0.6, 0.1, s, 0.1, grid) < 1e-11);
    }
  }
}

TEST_CASE("jacobian at the trivial point is the closed-form diagonal") {
  const Grid grid(256);
  const double beta = 0.8;
  SolutionPoint trivial;
  trivial.beta = beta;
  const std::vector<int> modes = fold_modes(1, 16);
  const JacobianMatrix jac = residual_jacobian(trivial, grid, 16, modes);

  SUBCASE("mu column is the constant 1/2") {
    CHECK(jac.cols(0, JacobianMatrix::col_mu) == doctest::Approx(0.5).epsilon(1e-13));
    for (int r = 1; r <= 16; ++r) CHECK(std::abs(jac.cols(r, JacobianMatrix::col_mu)) < 1e-12);
  }
  SUBCASE("V column is cos(theta)") {
    CHECK(jac.cols(1, JacobianMatrix::col_V) == doctest::Approx(1.0).epsilon(1e-13));
    for (int r = 0; r <= 16; ++r)
      if (r != 1) CHECK(std::abs(jac.cols(r, JacobianMatrix::col_V)) < 1e-12);
  }
  SUBCASE("a_n columns carry (1/4) n(n+1)(n-1)(beta - beta_n) at row n") {
    for (int n : modes) {
      const double expected = 0.25 * n * (n + 1.0) * (n - 1.0) * (beta - bifurcation_beta(n));
      for (int r = 0; r <= 16; ++r) {
        const double got = jac.cols(r, jac.col_of_mode(n));
        if (r == n) CHECK(std::abs(got - expected) < 1e-11);
        else CHECK(std::abs(got) < 1e-11);
      }
    }
  }
}

TEST_CASE("jacobian columns match central finite differences at nontrivial points") {
  const Grid grid(256);
  std::mt19937 rng(5500);
  std::uniform_real_distribution<double> betas(0.1, 1.2);
  std::uniform_real_distribution<double> speeds(-0.5, 0.5);
  const int row_max = 12;
  for (int trial = 0; trial < 5; ++trial) {
    SolutionPoint p;
    p.beta = betas(rng);
    p.V = speeds(rng);
    p.shape = oracles::random_shape(rng, 8, 0.35);
    const std::vector<int> modes = fold_modes(1, 8);
    const JacobianMatrix jac = residual_jacobian(p, grid, row_max, modes);

    auto column_error = [&](const Eigen::VectorXd& analytic, const Eigen::VectorXd& fd) {
      return (analytic - fd).lpNorm<Eigen::Infinity>() /
             std::max(1.0, analytic.lpNorm<Eigen::Infinity>());
    };

    const Eigen::VectorXd fd_mu = oracles::fd_jacobian_column(p, grid, row_max, [&](double e) {
      SolutionPoint q = p;
      q.shape.mu += e;
      return q;
    });
    CHECK(column_error(jac.cols.col(JacobianMatrix::col_mu), fd_mu) < 1e-6);

    const Eigen::VectorXd fd_v = oracles::fd_jacobian_column(p, grid, row_max, [&](double e) {
      SolutionPoint q = p;
      q.V += e;
      return q;
    });
    CHECK(column_error(jac.cols.col(JacobianMatrix::col_V), fd_v) < 1e-6);

    const Eigen::VectorXd fd_beta = oracles::fd_jacobian_column(p, grid, row_max, [&](double e) {
      SolutionPoint q = p;
      q.beta += e;
      return q;
    });
    CHECK(column_error(jac.beta_col, fd_beta) < 1e-6);

    for (int n : modes) {
      const Eigen::VectorXd fd_a = oracles::fd_jacobian_column(p, grid, row_max, [&](double e) {
        SolutionPoint q = p;
        q.shape.set_coeff(n, q.shape.coeff(n) + e);
        return q;
      });
      CHECK(column_error(jac.cols.col(jac.col_of_mode(n)), fd_a) < 1e-6);
    }
  }
}

TEST_CASE("one-sided difference converges to the analytic column at rate O(eps)") {
  const Grid grid(256);
  std::mt19937 rng(5600);
  SolutionPoint p;
  p.beta = 0.6;
  p.V = 0.1;
  p.shape = oracles::random_shape(rng, 6, 0.3);
  const int n = 4;  // probe direction w^{n+1}
  const int row_max = 12;
  const JacobianMatrix jac = residual_jacobian(p, grid, row_max, fold_modes(1, 6));
  const CosineSeries base = evaluate_residual(p.beta, p.V, p.shape, grid);

  auto one_sided_error = [&](double eps) {
    ShapeCoeffs bumped = p.shape;
    bumped.set_coeff(n, bumped.coeff(n) + eps);
    const CosineSeries f = evaluate_residual(p.beta, p.V, bumped, grid);
    double err = 0.0;
    for (int r = 0; r <= row_max; ++r) {
      const double diff = (f.coeff(r) - base.coeff(r)) / eps;
      err = std::max(err, std::abs(diff - jac.cols(r, jac.col_of_mode(n))));
    }
    return err;
  };

  const double e3 = one_sided_error(1e-3);
  const double e4 = one_sided_error(1e-4);
  const double e5 = one_sided_error(1e-5);
  // quadratic remainder: each decade of eps buys a decade of error
  CHECK(e3 / e4 > 6.0);
  CHECK(e4 / e5 > 6.0);
  CHECK(e3 / e4 < 16.0);
}

TEST_CASE("dealiasing precondition is enforced") {
  const ShapeCoeffs s = ShapeCoeffs::single_mode(30, 1e-3);
  CHECK_THROWS_AS(evaluate_residual(0.5, 0.0, s, Grid(64)), std::invalid_argument);
  CHECK_NOTHROW(evaluate_residual(0.5, 0.0, s, Grid(256)));
}
