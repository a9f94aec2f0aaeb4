#pragma once

#include <cstdint>
#include <random>

namespace reachlab::detail {

/// SplitMix64 step; used only to derive well-mixed seeds for substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic engine for (seed, stream). Distinct streams let one user
/// seed drive several independent draws (points, probes, trial indices)
/// without coupling their sequences.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x2545f4914f6cdd1dULL);
  std::seed_seq seq{static_cast<unsigned>(splitmix64(s)), static_cast<unsigned>(splitmix64(s)),
                    static_cast<unsigned>(splitmix64(s)), static_cast<unsigned>(splitmix64(s))};
  return std::mt19937_64(seq);
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng);
}

inline double normal(std::mt19937_64& eng) {
  return std::normal_distribution<double>(0.0, 1.0)(eng);
}

inline std::size_t uniform_index(std::mt19937_64& eng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
}

}  // namespace reachlab::detail
