#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "motwave/spectral.hpp"
#include "oracles.hpp"

using namespace motwave;

namespace {

GridSamples sample(const Grid& grid, const std::function<double(double)>& f) {
  GridSamples out{grid, std::vector<double>(static_cast<size_t>(grid.size()))};
  for (int j = 0; j < grid.size(); ++j) out.values[j] = f(grid.theta(j));
  return out;
}

}  // namespace

TEST_CASE("grid accepts only powers of two >= 16") {
  CHECK_THROWS_AS(Grid(15), std::invalid_argument);
  CHECK_THROWS_AS(Grid(17), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
  CHECK(Grid(16).size() == 16);
  CHECK(Grid(256).max_mode() == 127);
}

TEST_CASE("projection of a constant") {
  const Grid grid(64);
  const TrigSeries s = project(sample(grid, [](double) { return 1.0; }));
  CHECK(s.cos_coeffs[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (int k = 1; k <= s.max_mode(); ++k) {
    CHECK(std::abs(s.cos_coeffs[k]) < 1e-14);
    CHECK(std::abs(s.sin_coeffs[k]) < 1e-14);
  }
}

TEST_CASE("projection picks out a single cosine mode") {
  const Grid grid(64);
  const TrigSeries s = project(sample(grid, [](double t) { return std::cos(3.0 * t); }));
  for (int k = 0; k <= s.max_mode(); ++k) {
    CHECK(std::abs(s.cos_coeffs[k] - (k == 3 ? 1.0 : 0.0)) < 1e-14);
    CHECK(std::abs(s.sin_coeffs[k]) < 1e-14);
  }
}

TEST_CASE("projection of cos^2 matches direct quadrature") {
  const auto f = [](double t) { return std::cos(t) * std::cos(t); };
  const Grid grid(64);
  const TrigSeries s = project(sample(grid, f));
  // independent quadrature oracle; double-angle gives exactly 1/2, 1/2
  const double c0 = oracles::fourier_cos_coeff(f, 0);
  const double c2 = oracles::fourier_cos_coeff(f, 2);
  CHECK(s.cos_coeffs[0] == doctest::Approx(c0).epsilon(1e-13));
  CHECK(s.cos_coeffs[2] == doctest::Approx(c2).epsilon(1e-13));
  CHECK(s.cos_coeffs[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.cos_coeffs[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(s.cos_coeffs[1]) < 1e-14);
}

TEST_CASE("projection rejects non-finite samples") {
  const Grid grid(16);
  GridSamples bad{grid, std::vector<double>(16, 0.0)};
  bad.values[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(project(bad), std::invalid_argument);
}

TEST_CASE("hilbert multiplier on low modes") {
  TrigSeries s = TrigSeries::zero(4);
  SUBCASE("constant maps to zero") {
    s.cos_coeffs[0] = 1.0;
    const TrigSeries h = hilbert(s);
    CHECK(sup_norm(h.cos_coeffs) == 0.0);
    CHECK(sup_norm(h.sin_coeffs) == 0.0);
  }
  SUBCASE("cos(theta) -> sin(theta)") {
    s.cos_coeffs[1] = 1.0;
    const TrigSeries h = hilbert(s);
    CHECK(h.sin_coeffs[1] == 1.0);
    CHECK(h.cos_coeffs[1] == 0.0);
  }
  SUBCASE("sin(theta) -> -cos(theta)") {
    s.sin_coeffs[1] = 1.0;
    const TrigSeries h = hilbert(s);
    CHECK(h.cos_coeffs[1] == -1.0);
  }
}

TEST_CASE("hilbert of cos(2 theta) matches the cot-kernel quadrature") {
  const Grid grid(512);
  const GridSamples f = sample(grid, [](double t) { return std::cos(2.0 * t); });
  const TrigSeries h = hilbert(project(f));
  for (int j = 0; j < 32; ++j) {
    const double theta = grid.theta_mid(j * 16);
    const double quad = hilbert_quadrature_oracle(f, theta);
    CHECK(std::abs(eval_series(h, theta) - quad) < 1e-10);
  }
}

TEST_CASE("quadrature oracle basics at N = 512") {
  const Grid grid(512);
  SUBCASE("constant integrates to zero") {
    const GridSamples one = sample(grid, [](double) { return 1.0; });
    for (int j : {0, 100, 255, 511})
      CHECK(std::abs(hilbert_quadrature_oracle(one, grid.theta_mid(j))) < 1e-12);
  }
  SUBCASE("cos -> sin") {
    const GridSamples f = sample(grid, [](double t) { return std::cos(t); });
    for (int j : {0, 17, 200, 400}) {
      const double theta = grid.theta_mid(j);
      CHECK(hilbert_quadrature_oracle(f, theta) == doctest::Approx(std::sin(theta)).epsilon(1e-8));
    }
  }
  SUBCASE("sin -> -cos") {
    const GridSamples f = sample(grid, [](double t) { return std::sin(t); });
    for (int j : {3, 101, 320}) {
      const double theta = grid.theta_mid(j);
      CHECK(hilbert_quadrature_oracle(f, theta) == doctest::Approx(-std::cos(theta)).epsilon(1e-8));
    }
  }
  SUBCASE("grid-node target is rejected as singular") {
    const GridSamples f = sample(grid, [](double t) { return std::cos(t); });
    CHECK_THROWS_AS(hilbert_quadrature_oracle(f, grid.theta(7)), std::invalid_argument);
  }
}

TEST_CASE("derivative multiplier") {
  SUBCASE("constant -> 0") {
    TrigSeries s = TrigSeries::zero(3);
    s.cos_coeffs[0] = 7.0;
    const TrigSeries d = deriv_theta(s);
    CHECK(sup_norm(d.cos_coeffs) == 0.0);
    CHECK(sup_norm(d.sin_coeffs) == 0.0);
  }
  SUBCASE("sin(5 theta) -> 5 cos(5 theta)") {
    TrigSeries s = TrigSeries::zero(6);
    s.sin_coeffs[5] = 1.0;
    const TrigSeries d = deriv_theta(s);
    CHECK(d.cos_coeffs[5] == 5.0);
    CHECK(d.sin_coeffs[5] == 0.0);
  }
  SUBCASE("d/dtheta H[cos(n theta)] = n cos(n theta), n = 2") {
    TrigSeries s = TrigSeries::zero(3);
    s.cos_coeffs[2] = 1.0;
    const TrigSeries d = deriv_theta(hilbert(s));
    CHECK(d.cos_coeffs[2] == 2.0);
    const TrigSeries dn = dirichlet_neumann(s);
    CHECK(dn.cos_coeffs[2] == 2.0);
  }
}

TEST_CASE("hilbert . hilbert = -identity away from the mean") {
  const int M = 40;
  std::mt19937 rng(7001);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigSeries s = TrigSeries::zero(M);
  for (int k = 1; k <= M; ++k) {
    s.cos_coeffs[k] = unit(rng);
    s.sin_coeffs[k] = unit(rng);
  }
  const TrigSeries hh = hilbert(hilbert(s));
  for (int k = 1; k <= M; ++k) {
    CHECK(hh.cos_coeffs[k] == -s.cos_coeffs[k]);
    CHECK(hh.sin_coeffs[k] == -s.sin_coeffs[k]);
  }
}

TEST_CASE("hilbert commutes with the derivative") {
  const int M = 40;
  std::mt19937 rng(7002);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigSeries s = TrigSeries::zero(M);
  for (int k = 1; k <= M; ++k) {
    s.cos_coeffs[k] = unit(rng);
    s.sin_coeffs[k] = unit(rng);
  }
  const TrigSeries a = hilbert(deriv_theta(s));
  const TrigSeries b = deriv_theta(hilbert(s));
  for (int k = 0; k <= M; ++k) {
    CHECK(a.cos_coeffs[k] == doctest::Approx(b.cos_coeffs[k]).epsilon(1e-15));
    CHECK(a.sin_coeffs[k] == doctest::Approx(b.sin_coeffs[k]).epsilon(1e-15));
  }
}

TEST_CASE("multiplier hilbert matches the quadrature oracle on random band-limited data") {
  const Grid grid(512);
  std::mt19937 rng(7003);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigSeries s = TrigSeries::zero(24);
  for (int k = 1; k <= 24; ++k) {
    s.cos_coeffs[k] = unit(rng) / k;
    s.sin_coeffs[k] = unit(rng) / k;
  }
  const GridSamples f = synthesize(s, grid);
  const TrigSeries h = hilbert(s);
  for (int j = 0; j < grid.size(); j += 37) {
    const double theta = grid.theta_mid(j);
    CHECK(std::abs(eval_series(h, theta) - hilbert_quadrature_oracle(f, theta)) < 1e-8);
  }
}

TEST_CASE("project . synthesize round-trips coefficient vectors") {
  for (int n : {64, 256}) {
    const Grid grid(n);
    std::mt19937 rng(7004 + n);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    TrigSeries s = TrigSeries::zero(grid.max_mode());
    s.cos_coeffs[0] = unit(rng);
    for (int k = 1; k <= grid.max_mode(); ++k) {
      s.cos_coeffs[k] = unit(rng);
      s.sin_coeffs[k] = unit(rng);
    }
    const TrigSeries back = project(synthesize(s, grid));
    for (int k = 0; k <= grid.max_mode(); ++k) {
      CHECK(std::abs(back.cos_coeffs[k] - s.cos_coeffs[k]) < 1e-13);
      CHECK(std::abs(back.sin_coeffs[k] - s.sin_coeffs[k]) < 1e-13);
    }
  }
}

TEST_CASE("shifted projection recovers coefficients from midpoint samples") {
  const Grid grid(128);
  TrigSeries s = TrigSeries::zero(10);
  s.cos_coeffs[0] = 0.25;
  s.cos_coeffs[3] = 1.5;
  s.sin_coeffs[7] = -0.75;
  const double offset = grid.theta_mid(0);
  GridSamples shifted{grid, std::vector<double>(static_cast<size_t>(grid.size()))};
  for (int j = 0; j < grid.size(); ++j)
    shifted.values[j] = eval_series(s, grid.theta(j) + offset);
  const TrigSeries back = project_shifted(shifted, offset);
  for (int k = 0; k <= 10; ++k) {
    CHECK(back.cos_coeffs[k] == doctest::Approx(s.cos_coeffs[k]).epsilon(1e-13));
    CHECK(back.sin_coeffs[k] == doctest::Approx(s.sin_coeffs[k]).epsilon(1e-13));
  }
}
