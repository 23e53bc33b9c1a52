// Accelerated spectral kernels against the serial direct-summation reference.

#include <benchmark/benchmark.h>

#include <vector>

#include "ridgedeconv/reference.hpp"
#include "ridgedeconv/rng.hpp"
#include "ridgedeconv/spectral.hpp"

namespace {

using namespace ridgedeconv;

std::vector<double> sample(std::size_t n)
{
  Rng rng(42);
  std::vector<double> w(n);
  for (double& v : w)
    v = 8.0 * rng.uniform() - 4.0;
  return w;
}

void BM_EcfAccelerated(benchmark::State& state)
{
  const auto w = sample(static_cast<std::size_t>(state.range(0)));
  const FreqGrid grid(50.0, 4096);
  for (auto _ : state)
    benchmark::DoNotOptimize(ecf(w, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(grid.size()));
}

void BM_EcfReference(benchmark::State& state)
{
  const auto w = sample(static_cast<std::size_t>(state.range(0)));
  const FreqGrid grid(50.0, 4096);
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::ecf_direct(w, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<long>(grid.size()));
}

FreqTable gaussian_table(const FreqGrid& grid)
{
  FreqTable t(grid);
  for (std::size_t k = 0; k < grid.size(); ++k)
    t[k] = std::exp(-0.5 * grid.t(k) * grid.t(k));
  return t;
}

void BM_InverseAccelerated(benchmark::State& state)
{
  const FreqGrid grid(50.0, static_cast<std::size_t>(state.range(0)));
  const FreqTable t = gaussian_table(grid);
  const SpatialGrid xs(-10.0, 10.0, 1024);
  for (auto _ : state)
    benchmark::DoNotOptimize(inverse_fourier_real(t, xs));
}

void BM_InverseReference(benchmark::State& state)
{
  const FreqGrid grid(50.0, static_cast<std::size_t>(state.range(0)));
  const FreqTable t = gaussian_table(grid);
  const SpatialGrid xs(-10.0, 10.0, 1024);
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::inverse_fourier_direct(t, xs));
}

} // namespace

BENCHMARK(BM_EcfAccelerated)->Arg(100)->Arg(400)->Arg(3200);
BENCHMARK(BM_EcfReference)->Arg(100)->Arg(400)->Arg(3200);
BENCHMARK(BM_InverseAccelerated)->Arg(1024)->Arg(4096);
BENCHMARK(BM_InverseReference)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
