#include "ridgedeconv/rng.hpp"

namespace ridgedeconv {

std::uint64_t SplitMix64::mix(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
  return SplitMix64::mix(SplitMix64::mix(seed) ^ SplitMix64::mix(stream + 0x632BE59BD9B4E019ULL));
}

} // namespace ridgedeconv
