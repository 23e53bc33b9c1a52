#include "ridgedeconv/reference.hpp"

#include <cmath>
#include <numbers>

#include "ridgedeconv/errors.hpp"

namespace ridgedeconv::reference {

FreqTable weighted_ecf_direct(std::span<const double> w, std::span<const double> y, double scale,
                              const FreqGrid& grid)
{
  if (w.size() != y.size())
    throw InputError("weighted_ecf_direct: length mismatch");
  FreqTable table(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.t(k);
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
      sum += y[j] * std::polar(1.0, t * w[j]);
    table[k] = scale * sum;
  }
  return table;
}

FreqTable ecf_direct(std::span<const double> sample, const FreqGrid& grid)
{
  if (sample.empty())
    throw InputError("no data");
  const std::vector<double> ones(sample.size(), 1.0);
  return weighted_ecf_direct(sample, ones, 1.0 / static_cast<double>(sample.size()), grid);
}

std::vector<std::complex<double>> inverse_fourier_complex_direct(const FreqTable& table,
                                                                 const SpatialGrid& xs)
{
  std::vector<std::complex<double>> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs.x(i);
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < table.size(); ++k)
      sum += table.grid.weight(k) * table[k] * std::polar(1.0, -table.grid.t(k) * x);
    out[i] = sum / (2.0 * std::numbers::pi);
  }
  return out;
}

std::vector<double> inverse_fourier_direct(const FreqTable& table, const SpatialGrid& xs)
{
  const auto full = inverse_fourier_complex_direct(table, xs);
  std::vector<double> out(full.size());
  for (std::size_t i = 0; i < full.size(); ++i)
    out[i] = full[i].real();
  return out;
}

} // namespace ridgedeconv::reference
