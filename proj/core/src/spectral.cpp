#include "motwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motwave {

namespace {

// Compensated (Kahan) accumulator.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) noexcept {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite sample");
  }
}

}  // namespace

bool Grid::valid_size(int n) noexcept { return n >= 16 && (n & (n - 1)) == 0; }

Grid::Grid(int n_points) : n_(n_points) {
  if (!valid_size(n_points))
    throw std::invalid_argument("grid size must be a power of two >= 16, got " +
                                std::to_string(n_points));
  auto table = std::make_shared<std::vector<std::complex<double>>>();
  table->resize(n_);
  for (int l = 0; l < n_; ++l)
    (*table)[l] = {std::cos(two_pi * l / n_), std::sin(two_pi * l / n_)};
  roots_ = std::move(table);
}

std::complex<double> Grid::power(int k, int j) const noexcept {
  const long long idx = (static_cast<long long>(k) * j) % n_;
  return (*roots_)[idx < 0 ? idx + n_ : idx];
}

TrigSeries TrigSeries::zero(int max_mode) {
  TrigSeries out;
  out.cos_coeffs.assign(static_cast<size_t>(max_mode) + 1, 0.0);
  out.sin_coeffs.assign(static_cast<size_t>(max_mode) + 1, 0.0);
  return out;
}

double CosineSeries::sup_norm() const noexcept { return motwave::sup_norm(coeffs); }

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

TrigSeries project(const GridSamples& samples) {
  const int n = samples.grid.size();
  if (static_cast<int>(samples.values.size()) != n)
    throw std::invalid_argument("project: sample count does not match grid");
  require_finite(samples.values, "project");

  const auto& tab = samples.grid.roots();
  const int m_max = samples.grid.max_mode();
  TrigSeries out = TrigSeries::zero(m_max);

  KahanSum mean;
  for (int j = 0; j < n; ++j) mean.add(samples.values[j]);
  out.cos_coeffs[0] = mean.s / n;

  for (int k = 1; k <= m_max; ++k) {
    KahanSum sc, ss;
    int l = 0;
    for (int j = 0; j < n; ++j) {
      const double v = samples.values[j];
      sc.add(v * tab[l].real());
      ss.add(v * tab[l].imag());
      l += k;
      if (l >= n) l -= n;
    }
    out.cos_coeffs[k] = 2.0 * sc.s / n;
    out.sin_coeffs[k] = 2.0 * ss.s / n;
  }
  return out;
}

TrigSeries project_shifted(const GridSamples& samples, double offset) {
  // Samples live at theta_j + offset: analyze as if on the plain grid, then
  // rotate each mode back by k*offset.
  TrigSeries shifted = project(samples);
  TrigSeries out = shifted;
  for (int k = 1; k <= shifted.max_mode(); ++k) {
    const double c = std::cos(k * offset), s = std::sin(k * offset);
    out.cos_coeffs[k] = c * shifted.cos_coeffs[k] - s * shifted.sin_coeffs[k];
    out.sin_coeffs[k] = s * shifted.cos_coeffs[k] + c * shifted.sin_coeffs[k];
  }
  return out;
}

GridSamples synthesize(const TrigSeries& series, const Grid& grid) {
  const int n = grid.size();
  const int m_max = series.max_mode();
  if (m_max > grid.max_mode())
    throw std::invalid_argument("synthesize: series truncation exceeds grid Nyquist range");
  if (series.sin_coeffs.size() != series.cos_coeffs.size())
    throw std::invalid_argument("synthesize: ragged series");

  const auto& tab = grid.roots();
  GridSamples out{grid, std::vector<double>(static_cast<size_t>(n))};
  for (int j = 0; j < n; ++j) {
    KahanSum acc;
    acc.add(series.cos_coeffs[0]);
    int l = 0;
    for (int k = 1; k <= m_max; ++k) {
      l += j;
      if (l >= n) l -= n;
      acc.add(series.cos_coeffs[k] * tab[l].real());
      acc.add(series.sin_coeffs[k] * tab[l].imag());
    }
    out.values[j] = acc.s;
  }
  return out;
}

double eval_series(const TrigSeries& series, double theta) {
  KahanSum acc;
  acc.add(series.cos_coeffs[0]);
  for (int k = 1; k <= series.max_mode(); ++k) {
    acc.add(series.cos_coeffs[k] * std::cos(k * theta));
    acc.add(series.sin_coeffs[k] * std::sin(k * theta));
  }
  return acc.s;
}

TrigSeries hilbert(const TrigSeries& series) {
  TrigSeries out = TrigSeries::zero(series.max_mode());
  for (int k = 1; k <= series.max_mode(); ++k) {
    out.cos_coeffs[k] = -series.sin_coeffs[k];
    out.sin_coeffs[k] = series.cos_coeffs[k];
  }
  return out;
}

TrigSeries deriv_theta(const TrigSeries& series) {
  TrigSeries out = TrigSeries::zero(series.max_mode());
  for (int k = 1; k <= series.max_mode(); ++k) {
    out.cos_coeffs[k] = k * series.sin_coeffs[k];
    out.sin_coeffs[k] = -k * series.cos_coeffs[k];
  }
  return out;
}

TrigSeries dirichlet_neumann(const TrigSeries& series) {
  TrigSeries out = TrigSeries::zero(series.max_mode());
  for (int k = 1; k <= series.max_mode(); ++k) {
    out.cos_coeffs[k] = k * series.cos_coeffs[k];
    out.sin_coeffs[k] = k * series.sin_coeffs[k];
  }
  return out;
}

namespace {

// cot of d*pi/(2N) for signed odd d reduced into (-N, N].
double midpoint_kernel(long long d, int n) {
  long long r = d % (2LL * n);
  if (r > n) r -= 2LL * n;
  if (r <= -n) r += 2LL * n;
  // r odd, never 0 or +-N for even n
  return 1.0 / std::tan(static_cast<double>(r) * (two_pi / 4.0) / n);
}

}  // namespace

double hilbert_quadrature_oracle(const GridSamples& samples, double theta) {
  const int n = samples.grid.size();
  require_finite(samples.values, "hilbert_quadrature_oracle");
  if (static_cast<int>(samples.values.size()) != n)
    throw std::invalid_argument("hilbert_quadrature_oracle: sample count mismatch");

  const double pos = theta / two_pi * n;  // target in node units
  const double node_dist = std::abs(pos - std::round(pos));
  if (node_dist < 1e-9)
    throw std::invalid_argument("hilbert_quadrature_oracle: theta collides with a grid node");

  const double half = pos - 0.5;
  const long long k = std::llround(half);
  KahanSum acc;
  if (std::abs(half - static_cast<double>(k)) < 1e-9) {
    // Half-grid target: offsets are exact odd multiples of pi/N, so the kernel
    // can be evaluated without cancellation in the angle difference.
    for (int j = 0; j < n; ++j) acc.add(samples.values[j] * midpoint_kernel(2 * (k - j) + 1, n));
  } else {
    for (int j = 0; j < n; ++j) {
      double u = theta - samples.grid.theta(j);
      acc.add(samples.values[j] / std::tan(0.5 * u));
    }
  }
  return acc.s / n;
}

GridSamples hilbert_quadrature_midpoints(const GridSamples& samples) {
  const int n = samples.grid.size();
  require_finite(samples.values, "hilbert_quadrature_midpoints");

  // kernel table over odd offsets: table[i] = cot((2i+1) pi / (2N)), i = 0..N-1
  std::vector<double> table(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) table[i] = midpoint_kernel(2LL * i + 1, n);

  GridSamples out{samples.grid, std::vector<double>(static_cast<size_t>(n))};
  for (int t = 0; t < n; ++t) {
    KahanSum acc;
    for (int j = 0; j < n; ++j) {
      long long d = 2LL * (t - j) + 1;  // offset in units of pi/N
      long long r = d % (2LL * n);
      if (r < 0) r += 2LL * n;
      // r odd in [1, 2N-1]; kernel antisymmetric around N
      const double ker = (r < n) ? table[(r - 1) / 2] : -table[(2 * n - r - 1) / 2];
      acc.add(samples.values[j] * ker);
    }
    out.values[t] = acc.s / n;
  }
  return out;
}

}  // namespace motwave
