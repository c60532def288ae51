#ifndef INVREP_SOBOL_HPP
#define INVREP_SOBOL_HPP

#include <cstdint>
#include <vector>

namespace invrep {

/// Sobol low-discrepancy sequence (32-bit, Gray-code order) with an optional
/// per-run XOR digital shift so that replicates are independently randomized
/// while each point stays uniformly distributed.
class SobolSequence {
 public:
  static constexpr unsigned kMaxDim = 21;

  /// shift_seed = 0 means no scrambling.
  explicit SobolSequence(unsigned dim, std::uint64_t shift_seed = 0,
                         std::uint64_t shift_stream = 0);

  /// Next point, components in [0, 1).
  void next(double* out);
  unsigned dim() const { return dim_; }

 private:
  unsigned dim_;
  std::uint32_t index_ = 0;
  std::vector<std::uint32_t> state_;               // current Gray-code state
  std::vector<std::uint32_t> shift_;               // digital shift per dim
  std::vector<std::vector<std::uint32_t>> dirs_;   // direction numbers [dim][32]
};

}  // namespace invrep

#endif
