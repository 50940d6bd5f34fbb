#pragma once

#include <cstdint>

namespace hypent {

// Counter-based generator: the value for (seed, stream, counter) does not
// depend on how many other values were drawn, so parallel loops can draw
// by index.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t bits(std::uint64_t counter) const;
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Sequential convenience wrapper.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}
  std::uint64_t next_bits() { return rng_.bits(counter_++); }
  double next_uniform() { return rng_.uniform(counter_++); }
  std::uint64_t next_below(std::uint64_t n) { return rng_.below(counter_++, n); }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

}  // namespace hypent
