#pragma once

// Seeded randomness helpers. Every stochastic suite in the kit takes an
// explicit master seed; per-trial engines are derived with splitmix64 so a
// trial can be replayed in isolation.

#include <cstdint>
#include <random>
#include <vector>

namespace isotone {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 seeded_engine(std::uint64_t seed) {
  std::uint64_t s = seed;
  return std::mt19937_64(splitmix64(s));
}

// Engine for trial `k` of a suite run with `master` seed.
inline std::mt19937_64 trial_engine(std::uint64_t master, std::uint64_t k) {
  std::uint64_t s = master ^ (0xd1b54a32d192ed03ULL * (k + 1));
  return std::mt19937_64(splitmix64(s));
}

inline std::vector<double> uniform_vector(std::mt19937_64& eng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = dist(eng);
  return v;
}

// Uniformly random nonempty subset of {0,...,n-1} as a bitmask.
inline std::uint32_t random_nonempty_subset(std::mt19937_64& eng, int n) {
  const std::uint32_t full = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::uniform_int_distribution<std::uint32_t> dist(1u, full);
  return dist(eng);
}

}  // namespace isotone
