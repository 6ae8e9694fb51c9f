#pragma once

#include <cstdint>
#include <limits>

namespace seqmem {

/// Counter-based generator: output k of stream (seed, stream) is
/// mix64(key + k * gamma), with key = mix64(seed ^ mix64(stream + c)).
///
/// Every substream is addressable directly, so a task indexed by
/// (repeat, round, sequence) draws the same numbers no matter which thread
/// runs it or in what order. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(seed ^ mix64(stream + 0x632be59bd9b4e019ULL))) {}

  /// Substream for a nested task index, e.g. substream(seed, {repeat, round, seq}).
  static CounterRng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                              std::uint64_t c = 0) {
    std::uint64_t s = mix64(a + kGamma);
    s = mix64(s ^ (b + 2 * kGamma));
    s = mix64(s ^ (c + 3 * kGamma));
    return CounterRng(seed, s);
  }

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() { return mix64(key_ + (++counter_) * kGamma); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace seqmem
