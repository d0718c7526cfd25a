#pragma once

#include <cstdint>
#include <initializer_list>

namespace mecopt {

// Tiny deterministic generator with a public, platform-independent
// definition, so experiment outputs are reproducible everywhere. Each draw
// advances the state by a fixed odd constant and scrambles it.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next_u64();

  // Uniform in [0, 1): top 53 bits of one draw.
  double next_unit();

  // Uniform in [lo, hi).
  double next_uniform(double lo, double hi);

  // Exponential with the given mean (inverse-CDF on one uniform draw).
  double next_exponential(double mean);

 private:
  uint64_t state_;
};

// Collapse a list of words into one well-mixed seed, so independent
// substreams can be keyed by (seed, draw, task, field) tuples.
uint64_t mix_key(std::initializer_list<uint64_t> words);

}  // namespace mecopt
