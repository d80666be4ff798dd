#include <benchmark/benchmark.h>

#include <random>

#include "motwave/continuation.hpp"
#include "motwave/functional.hpp"
#include "motwave/geometry.hpp"
#include "motwave/linear_analysis.hpp"
#include "motwave/spectral.hpp"

using namespace motwave;

namespace {

ShapeCoeffs bench_shape(int max_mode) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  ShapeCoeffs s;
  s.mu = 0.02;
  for (int n = 2; n <= max_mode; ++n) s.set_coeff(n, 0.3 * unit(rng) / ((n + 1.0) * (n + 1.0)));
  return s;
}

void BM_project(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)));
  const GridSamples kappa = curvature(synthesize_boundary(bench_shape(8), grid));
  for (auto _ : state) benchmark::DoNotOptimize(project(kappa));
}

void BM_evaluate_residual(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)));
  const ShapeCoeffs shape = bench_shape(8);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_residual(0.5, 0.1, shape, grid));
}

void BM_residual_jacobian(benchmark::State& state) {
  const Grid grid(256);
  SolutionPoint p;
  p.beta = 0.5;
  p.V = 0.1;
  p.shape = bench_shape(8);
  const int m_top = static_cast<int>(state.range(0));
  const std::vector<int> modes = fold_modes(1, m_top);
  for (auto _ : state) benchmark::DoNotOptimize(residual_jacobian(p, grid, m_top, modes));
}

void BM_quadrature_hilbert(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)));
  const GridSamples kappa = curvature(synthesize_boundary(bench_shape(8), grid));
  for (auto _ : state) benchmark::DoNotOptimize(hilbert_quadrature_midpoints(kappa));
}

void BM_solve_at_amplitude(benchmark::State& state) {
  ContinuationConfig cfg;
  cfg.m = 2;
  const double s = 1e-2;
  SolutionPoint guess;
  guess.beta = bifurcation_beta(2);
  guess.shape = ShapeCoeffs::single_mode(2, s, 2);
  for (auto _ : state) benchmark::DoNotOptimize(solve_at_amplitude(cfg, s, guess));
}

}  // namespace

BENCHMARK(BM_project)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_evaluate_residual)->Arg(128)->Arg(256)->Arg(512);
BENCHMARK(BM_residual_jacobian)->Arg(16)->Arg(32)->Arg(48);
BENCHMARK(BM_quadrature_hilbert)->Arg(256)->Arg(512);
BENCHMARK(BM_solve_at_amplitude)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
