#pragma once

#include <cmath>
#include <cstdint>

namespace mimd {

// Reproducible random number generation. Two documented algorithms:
//   - SplitMix64 (Steele, Lea, Flood 2014) for seeding and stream derivation
//   - xoshiro256** (Blackman, Vigna 2018) as the sample-stream generator
// Normal deviates use the Box-Muller cosine branch so every draw consumes a
// fixed number of generator outputs; streams therefore stay aligned no matter
// how work is partitioned. <random> distributions are avoided on purpose:
// their algorithms are implementation-defined, which would break the
// same-seed-same-bytes contract.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives the seed of sub-stream `index` from a base seed. Used to give each
// sampling chunk / sweep grid point its own independent stream.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t s = base;
  std::uint64_t a = splitmix64_next(s);
  s = index ^ 0x632BE59BD9B4E019ULL;
  std::uint64_t b = splitmix64_next(s);
  s = a ^ b;
  return splitmix64_next(s);
}

class Xoshiro256ss {
public:
  explicit Xoshiro256ss(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1): top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]: safe as a log() argument.
  double uniform_pos() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal deviate, Box-Muller cosine branch. Exactly two generator
  // outputs per call.
  double normal() {
    const double u1 = uniform_pos();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace mimd
