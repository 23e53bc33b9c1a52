#pragma once

// Serial, direct-summation versions of the spectral kernels. Every phase is
// evaluated with its own sin/cos call. Kept as oracles for the accelerated
// kernels in spectral.hpp and as the baseline of bench_kernels.

#include <complex>
#include <span>
#include <vector>

#include "ridgedeconv/spectral.hpp"

namespace ridgedeconv::reference {

FreqTable weighted_ecf_direct(std::span<const double> w, std::span<const double> y, double scale,
                              const FreqGrid& grid);

FreqTable ecf_direct(std::span<const double> sample, const FreqGrid& grid);

//! Re of the full-grid trapezoid, no symmetry used.
std::vector<double> inverse_fourier_direct(const FreqTable& table, const SpatialGrid& xs);

std::vector<std::complex<double>> inverse_fourier_complex_direct(const FreqTable& table,
                                                                 const SpatialGrid& xs);

} // namespace ridgedeconv::reference
