#include "mecopt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace mecopt {
namespace {

uint64_t scramble(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t SplitMix64::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return scramble(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_uniform(double lo, double hi) {
  if (!(lo <= hi)) throw std::invalid_argument("uniform: need lo <= hi");
  return lo + (hi - lo) * next_unit();
}

double SplitMix64::next_exponential(double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be > 0");
  // -mean * log(1 - u); u < 1 guarantees a finite value.
  return -mean * std::log1p(-next_unit());
}

uint64_t mix_key(std::initializer_list<uint64_t> words) {
  uint64_t acc = 0x243f6a8885a308d3ULL;  // arbitrary non-zero start
  for (uint64_t w : words) {
    acc += 0x9e3779b97f4a7c15ULL;
    acc = scramble(acc ^ w);
  }
  return acc;
}

}  // namespace mecopt
