#pragma once

#include <cmath>
#include <cstdint>

// Deterministic random streams.
//
// Everything that draws randomness does so through a keyed counter stream:
// the output at position n is a pure function of (key, n).  Streams for
// sub-tasks (one per sweep pair, one per sampled trajectory, one per context)
// are derived by hashing the parent seed with the sub-task index, so results
// never depend on iteration order or thread scheduling.
//
// std::mt19937 is avoided on purpose: the engine is portable but the
// standard distributions are not, and committed fixtures plus byte-identical
// reruns need a fully pinned transform.

namespace trmlab::rng {

// splitmix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed-splitting rule: child seed = mix64(parent ^ mix64(stream_index)).
inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream));
}

inline constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return derive(derive(seed, a), b);
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() { return mix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; one draw consumes two uniforms so the
  // stream position stays a pure function of the draw count.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();  // log(0) guard; probability 2^-53
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace trmlab::rng
