#pragma once

#include <cstdint>
#include <random>

namespace mfact {

// Seedable generator with a stable output stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Bounded integers are drawn with our own rejection routine instead
// of std::uniform_int_distribution (whose algorithm is implementation-defined),
// so a given seed produces the same draws on every platform and toolchain.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for trial `trial` of a run seeded with `seed`.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer, used to derive well-separated seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace mfact
