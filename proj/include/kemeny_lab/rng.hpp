#pragma once

#include <cstdint>

namespace kemeny_lab::rng {

/// SplitMix64 step: advances the state and returns the next output word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Folds one word into a stream key.
inline std::uint64_t mix_key(std::uint64_t key, std::uint64_t word) {
  std::uint64_t state = key ^ (0x9e3779b97f4a7c15ULL + word);
  return splitmix64_next(state);
}

/// Counter-based stream: the state is derived purely from its key words, so
/// streams for distinct (seed, start, target, trial) tuples are independent
/// and insensitive to scheduling order.
class SplitStream {
 public:
  SplitStream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    state_ = mix_key(mix_key(mix_key(seed, a), b), c);
    state_ = splitmix64_next(state_);
  }

  std::uint64_t next() { return splitmix64_next(state_); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace kemeny_lab::rng
