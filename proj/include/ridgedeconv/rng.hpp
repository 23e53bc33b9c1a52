#pragma once

#include <cstdint>
#include <limits>

namespace ridgedeconv {

//! SplitMix64: a counter-based generator. The i-th output is a bijective
//! mix of `seed + i * gamma`, so any stream is fully determined by its seed.
//! Satisfies UniformRandomBitGenerator and can drive <random> distributions.
class SplitMix64
{
public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max()
  {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()()
  {
    state_ += kGamma;
    return mix(state_);
  }

  //! Uniform double on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  static std::uint64_t mix(std::uint64_t z);

private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

using Rng = SplitMix64;

//! Seed of sub-stream `stream` of `seed`; used so that replicate k of a
//! study can be regenerated on its own.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace ridgedeconv
