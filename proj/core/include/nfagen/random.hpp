#pragma once

#include <cstdint>
#include <random>

namespace nfagen {

// Every sampling routine takes its generator explicitly; results are
// reproducible bit-for-bit for a given seed and standard library.
using Rng = std::mt19937_64;

// SplitMix64 finalizer: derives independent sub-seeds (one per chain) from a
// master seed, so fanning chains out over threads does not change results.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(split_seed(seed, stream));
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline int uniform_index(Rng& rng, int bound) {
  return std::uniform_int_distribution<int>(0, bound - 1)(rng);
}

}  // namespace nfagen
