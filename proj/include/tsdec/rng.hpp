#pragma once

#include <cstdint>
#include <random>

namespace tsdec {

// splitmix64; used to derive independent per-trial seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream for trial `index` under `master_seed`. Disjoint indices give
// statistically independent streams, and the mapping is stable, so sweeps
// are reproducible regardless of how trials are distributed over workers.
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(master_seed ^ splitmix64(index)));
}

// Uniform in (0, 1]; avoids returning zero so log(u) is always finite.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace tsdec
