#pragma once

// Counter-based deterministic PRNG. Each trial index gets an independent
// stream derived from (seed, index), so results are identical no matter how
// trials are partitioned across threads.

#include <cstdint>

namespace ferro {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : s_(splitmix64(seed ^ splitmix64(trial + 0x5851f42d4c957f2dull))) {}

  std::uint64_t next() {
    s_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = s_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Uniform in [0, n) via 128-bit multiply-shift; the bias of ~n/2^64 is
  // far below anything observable at our trial counts.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t s_;
};

}  // namespace ferro
