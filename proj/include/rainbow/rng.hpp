#pragma once

// Seeding helpers. Sequential streams use std::mt19937_64; per-pair draws in
// the samplers use a counter-based splitmix64 hash so that every pair's value
// depends only on (seed, stream, index) and not on visiting order.

#include <cstdint>
#include <random>

namespace rainbow {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream keys derived from one user seed.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) {
  return splitmix64(key ^ splitmix64(counter));
}

// Uniform in [0,1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(stream_key(seed, stream));
}

}  // namespace rainbow
