#ifndef INVREP_RNG_HPP
#define INVREP_RNG_HPP

#include <cstdint>

namespace invrep {

// Counter-based generator: draw i of stream s under seed k is
//   mix64(mix64(k + GOLDEN * (s + 1)) + GOLDEN * i)
// with mix64 the SplitMix64 finalizer. Stateless given (seed, stream, i),
// so seeds are portable across platforms and substreams never overlap.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix64(seed + kGolden * (stream + 1))) {}

  std::uint64_t next_u64() { return mix64(base_ + kGolden * ++counter_); }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n) {
    // Modulo bias is < n / 2^64; negligible for the n used here.
    return next_u64() % n;
  }

  static std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace invrep

#endif
