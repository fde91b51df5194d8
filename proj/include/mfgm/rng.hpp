#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace mfgm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for (seed, stream). Streams derived from the same
/// seed but different indices are decorrelated, so parallel restarts can
/// each own one without coordinating.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = splitmix64(seed ^ splitmix64(stream));
  return std::mt19937_64(s);
}

// Hand-rolled draws below: std::shuffle and the <random> distributions are
// implementation-defined, which would break byte-reproducibility contracts.

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  const std::uint64_t limit =
      ~std::uint64_t{0} - ~std::uint64_t{0} % k;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % k;
}

/// Uniform double in [0,1) from the top 53 bits.
inline double canonical_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::vector<int> random_permutation(int k, std::mt19937_64& rng) {
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int i = k - 1; i > 0; --i)
    std::swap(perm[i], perm[bounded(rng, static_cast<std::uint64_t>(i) + 1)]);
  return perm;
}

}  // namespace mfgm
