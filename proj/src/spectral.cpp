#include "ridgedeconv/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv {

namespace {

// Phasor recurrences are restarted from an exact sincos every kChunk steps;
// this bounds the accumulated rounding to ~kChunk ulps.
constexpr std::size_t kChunk = 64;

void require_finite(std::span<const double> v, const char* what)
{
  for (double x : v)
    if (!std::isfinite(x))
      throw InputError(std::string(what) + " contains a non-finite value");
}

void require_finite(const FreqTable& table)
{
  for (const auto& z : table.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InputError("frequency table contains NaN or Inf");
}

// S_m = sum_j y_j exp(i m dt w_j) for m in [0, count). Parallel over chunks
// of m; each S_m is summed over j in index order by a single thread.
std::vector<std::complex<double>> half_phasor_sums(std::span<const double> w,
                                                   std::span<const double> y, double dt,
                                                   std::size_t count)
{
  const std::size_t n = w.size();
  std::vector<double> step_re(n), step_im(n);
  for (std::size_t j = 0; j < n; ++j) {
    step_re[j] = std::cos(dt * w[j]);
    step_im[j] = std::sin(dt * w[j]);
  }

  std::vector<std::complex<double>> out(count);
  const auto n_chunks = static_cast<long>((count + kChunk - 1) / kChunk);

#pragma omp parallel for schedule(static)
  for (long c = 0; c < n_chunks; ++c) {
    const std::size_t m0 = static_cast<std::size_t>(c) * kChunk;
    const std::size_t len = std::min(kChunk, count - m0);
    std::array<double, kChunk> acc_re{};
    std::array<double, kChunk> acc_im{};
    const double t0 = static_cast<double>(m0) * dt;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = t0 * w[j];
      double pr = y[j] * std::cos(phase);
      double pi = y[j] * std::sin(phase);
      const double qr = step_re[j], qi = step_im[j];
      for (std::size_t m = 0; m < len; ++m) {
        acc_re[m] += pr;
        acc_im[m] += pi;
        const double nr = pr * qr - pi * qi;
        pi = pr * qi + pi * qr;
        pr = nr;
      }
    }
    for (std::size_t m = 0; m < len; ++m)
      out[m0 + m] = {acc_re[m], acc_im[m]};
  }
  return out;
}

FreqTable mirrored_table(const FreqGrid& grid, const std::vector<std::complex<double>>& half,
                         double scale)
{
  FreqTable table(grid);
  const std::size_t mid = grid.zero_index();
  for (std::size_t m = 0; m < half.size(); ++m) {
    const std::complex<double> v = half[m] * scale;
    table[mid + m] = v;
    table[mid - m] = std::conj(v);
  }
  table[mid] = {table[mid].real(), 0.0};
  return table;
}

} // namespace

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_x)
  : x_min_(x_min), x_max_(x_max), n_x_(n_x), dx_(0.0)
{
  if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw InputError("spatial grid needs finite x_min < x_max");
  if (n_x < 2)
    throw InputError("spatial grid needs at least 2 points");
  dx_ = (x_max - x_min) / static_cast<double>(n_x - 1);
}

std::vector<double> SpatialGrid::points() const
{
  std::vector<double> p(n_x_);
  for (std::size_t i = 0; i < n_x_; ++i)
    p[i] = x(i);
  return p;
}

FreqGrid::FreqGrid(double t_max, std::size_t intervals) : t_max_(t_max), n_t_(intervals), dt_(0.0)
{
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw InputError("frequency grid needs t_max > 0");
  if (intervals < 8 || intervals % 2 != 0)
    throw InputError("frequency grid needs an even interval count >= 8");
  dt_ = 2.0 * t_max / static_cast<double>(intervals);
}

FreqGrid FreqGrid::for_spatial(double t_max, const SpatialGrid& xs, std::size_t min_intervals)
{
  const double dt_max = std::numbers::pi / (xs.x_max() - xs.x_min());
  auto needed = static_cast<std::size_t>(std::ceil(2.0 * t_max / dt_max));
  needed += needed % 2;
  return FreqGrid(t_max, std::max(needed, min_intervals + min_intervals % 2));
}

FreqTable::FreqTable(const FreqGrid& g, std::vector<std::complex<double>> v) : grid(g), values(std::move(v))
{
  if (values.size() != grid.size())
    throw InputError("frequency table length does not match its grid");
}

FreqTable weighted_ecf(std::span<const double> w, std::span<const double> y, const FreqGrid& grid)
{
  if (w.size() != y.size())
    throw InputError("weighted_ecf: W and Y lengths differ");
  if (w.empty())
    throw InputError("no data");
  require_finite(w, "W");
  require_finite(y, "Y");
  const auto half = half_phasor_sums(w, y, grid.spacing(), grid.zero_index() + 1);
  return mirrored_table(grid, half, 1.0 / static_cast<double>(w.size()));
}

FreqTable ecf(std::span<const double> sample, const FreqGrid& grid)
{
  if (sample.empty())
    throw InputError("no data");
  const std::vector<double> ones(sample.size(), 1.0);
  return weighted_ecf(sample, ones, grid);
}

std::vector<double> nearest_neighbor_spacings(std::span<const double> x)
{
  const std::size_t n = x.size();
  if (n < 2)
    throw InputError("nearest-neighbour spacing needs at least 2 points");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> d(n);
  for (std::size_t k = 0; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    if (k > 0)
      best = std::min(best, x[order[k]] - x[order[k - 1]]);
    if (k + 1 < n)
      best = std::min(best, x[order[k + 1]] - x[order[k]]);
    d[order[k]] = best;
  }
  return d;
}

FreqTable spacing_weighted_ecf(std::span<const double> x, std::span<const double> y, const FreqGrid& grid)
{
  if (x.size() != y.size())
    throw InputError("spacing_weighted_ecf: X and Y lengths differ");
  if (x.size() < 2)
    throw InputError("spacing_weighted_ecf: need at least 2 points");
  require_finite(x, "X");
  require_finite(y, "Y");
  const auto d = nearest_neighbor_spacings(x);
  std::vector<double> dy(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    dy[j] = d[j] * y[j];
  const auto half = half_phasor_sums(x, dy, grid.spacing(), grid.zero_index() + 1);
  return mirrored_table(grid, half, 1.0);
}

std::vector<double> inverse_fourier_real(const FreqTable& table, const SpatialGrid& xs)
{
  require_finite(table);
  const FreqGrid& g = table.grid;
  const std::size_t mid = g.zero_index();
  const std::size_t count = mid + 1;
  const double dt = g.spacing();

  // coef_m = trapezoid weight * Hermitian part, doubled for m > 0.
  std::vector<double> cr(count), ci(count);
  cr[0] = g.weight(mid) * table[mid].real();
  ci[0] = 0.0;
  for (std::size_t m = 1; m < count; ++m) {
    const std::complex<double> h = 0.5 * (table[mid + m] + std::conj(table[mid - m]));
    const double a = 2.0 * g.weight(mid + m);
    cr[m] = a * h.real();
    ci[m] = a * h.imag();
  }

  std::vector<double> out(xs.size());
  const auto nx = static_cast<long>(xs.size());
  const double inv2pi = 0.5 / std::numbers::pi;

#pragma omp parallel for schedule(static)
  for (long i = 0; i < nx; ++i) {
    const double x = xs.x(static_cast<std::size_t>(i));
    const double qr = std::cos(dt * x), qi = -std::sin(dt * x);
    double sum = 0.0;
    for (std::size_t m0 = 0; m0 < count; m0 += kChunk) {
      const double phase = static_cast<double>(m0) * dt * x;
      double pr = std::cos(phase), pi = -std::sin(phase);
      const std::size_t m1 = std::min(count, m0 + kChunk);
      for (std::size_t m = m0; m < m1; ++m) {
        sum += cr[m] * pr - ci[m] * pi;
        const double nr = pr * qr - pi * qi;
        pi = pr * qi + pi * qr;
        pr = nr;
      }
    }
    out[static_cast<std::size_t>(i)] = inv2pi * sum;
  }
  return out;
}

std::vector<std::complex<double>> inverse_fourier_complex(const FreqTable& table, const SpatialGrid& xs)
{
  require_finite(table);
  const FreqGrid& g = table.grid;
  const std::size_t count = g.size();
  const double dt = g.spacing();
  std::vector<double> cr(count), ci(count);
  for (std::size_t k = 0; k < count; ++k) {
    cr[k] = g.weight(k) * table[k].real();
    ci[k] = g.weight(k) * table[k].imag();
  }

  std::vector<std::complex<double>> out(xs.size());
  const auto nx = static_cast<long>(xs.size());
  const double inv2pi = 0.5 / std::numbers::pi;

#pragma omp parallel for schedule(static)
  for (long i = 0; i < nx; ++i) {
    const double x = xs.x(static_cast<std::size_t>(i));
    const double qr = std::cos(dt * x), qi = -std::sin(dt * x);
    double sr = 0.0, si = 0.0;
    for (std::size_t k0 = 0; k0 < count; k0 += kChunk) {
      const double phase = g.t(k0) * x;
      double pr = std::cos(phase), pi = -std::sin(phase);
      const std::size_t k1 = std::min(count, k0 + kChunk);
      for (std::size_t k = k0; k < k1; ++k) {
        sr += cr[k] * pr - ci[k] * pi;
        si += cr[k] * pi + ci[k] * pr;
        const double nr = pr * qr - pi * qi;
        pi = pr * qi + pi * qr;
        pr = nr;
      }
    }
    out[static_cast<std::size_t>(i)] = {inv2pi * sr, inv2pi * si};
  }
  return out;
}

double plancherel_l2(const FreqTable& table)
{
  require_finite(table);
  double sum = 0.0;
  for (std::size_t k = 0; k < table.size(); ++k)
    sum += table.grid.weight(k) * std::norm(table[k]);
  return sum / (2.0 * std::numbers::pi);
}

FreqTable hermitian_part(const FreqTable& table)
{
  FreqTable out(table.grid);
  for (std::size_t k = 0; k < table.size(); ++k)
    out[k] = 0.5 * (table[k] + std::conj(table[table.grid.mirror(k)]));
  return out;
}

bool is_hermitian(const FreqTable& table, double tol)
{
  for (std::size_t k = 0; k < table.size(); ++k)
    if (std::abs(table[table.grid.mirror(k)] - std::conj(table[k])) > tol)
      return false;
  return true;
}

double trapezoid(const SpatialGrid& xs, std::span<const double> values)
{
  if (values.size() != xs.size())
    throw InputError("trapezoid: values do not match the grid");
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    sum += values[i];
  return sum * xs.spacing();
}

void write_csv(std::ostream& os, const FreqTable& table)
{
  os << "t,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < table.size(); ++k)
    os << table.grid.t(k) << ',' << table[k].real() << ',' << table[k].imag() << '\n';
}

} // namespace ridgedeconv
