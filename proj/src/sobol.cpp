#include "invrep/sobol.hpp"

#include <bit>
#include <stdexcept>

#include "invrep/rng.hpp"

namespace invrep {
namespace {

// Joe-Kuo primitive-polynomial parameters for dimensions 2..21
// (dimension 1 is the van der Corput sequence).
struct JoeKuo {
  unsigned s;
  unsigned a;
  std::uint32_t m[7];
};

constexpr JoeKuo kParams[] = {
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
};

}  // namespace

SobolSequence::SobolSequence(unsigned dim, std::uint64_t shift_seed,
                             std::uint64_t shift_stream)
    : dim_(dim) {
  if (dim == 0 || dim > kMaxDim)
    throw std::invalid_argument("SobolSequence: dimension out of range");
  dirs_.assign(dim, std::vector<std::uint32_t>(32));
  // dim 1: v_j = 2^(31-j)
  for (unsigned j = 0; j < 32; ++j) dirs_[0][j] = 1u << (31 - j);
  for (unsigned d = 1; d < dim; ++d) {
    const JoeKuo& p = kParams[d - 1];
    std::vector<std::uint32_t> m(p.m, p.m + p.s);
    for (unsigned j = p.s; j < 32; ++j) {
      std::uint32_t v = m[j - p.s] ^ (m[j - p.s] << p.s);
      for (unsigned t = 1; t < p.s; ++t) {
        if ((p.a >> (p.s - 1 - t)) & 1u) v ^= m[j - t] << t;
      }
      m.push_back(v);
    }
    for (unsigned j = 0; j < 32; ++j) dirs_[d][j] = m[j] << (31 - j);
  }
  state_.assign(dim, 0);
  shift_.assign(dim, 0);
  if (shift_seed != 0) {
    CounterRng rng(shift_seed, shift_stream);
    for (unsigned d = 0; d < dim; ++d)
      shift_[d] = static_cast<std::uint32_t>(rng.next_u64() >> 32);
  }
}

void SobolSequence::next(double* out) {
  if (index_ != 0) {
    const unsigned c = std::countr_zero(index_);  // Gray-code flip bit
    for (unsigned d = 0; d < dim_; ++d) state_[d] ^= dirs_[d][c];
  }
  ++index_;
  for (unsigned d = 0; d < dim_; ++d)
    out[d] = static_cast<double>(state_[d] ^ shift_[d]) * 0x1.0p-32;
}

}  // namespace invrep
