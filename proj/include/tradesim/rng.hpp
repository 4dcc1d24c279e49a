#pragma once

#include <cstdint>

namespace tradesim {

// Counter-based random stream. Every variate is a pure function of
// (seed, step, index), so a run can be resumed from any step boundary
// without carrying generator state around.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t bits(std::uint64_t step, std::uint64_t index) const noexcept {
    std::uint64_t x = mix(seed_ + 0x9e3779b97f4a7c15ULL * (step + 1));
    return mix(x ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t step, std::uint64_t index) const noexcept {
    return static_cast<double>(bits(step, index) >> 11) * 0x1.0p-53;
  }

  bool coin(std::uint64_t step, std::uint64_t index) const noexcept {
    return (bits(step, index) >> 63) != 0;
  }

  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t seed_;
};

// Sequential adaptor over CounterRng for code that just wants "the next
// number" (oracle sampling, synthetic generators in tests).
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : rng_(seed), stream_(stream) {}

  double uniform() noexcept { return rng_.uniform(stream_, counter_++); }
  std::uint64_t bits() noexcept { return rng_.bits(stream_, counter_++); }
  std::uint64_t position() const noexcept { return counter_; }

  // UniformRandomBitGenerator, so <random> distributions work on top.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() noexcept { return bits(); }

private:
  CounterRng rng_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace tradesim
