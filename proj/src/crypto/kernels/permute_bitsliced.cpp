// Bitsliced SPONGENT permutation. Built with -mbmi2 and only called after
// kernels::available(Kind::Bitsliced) has checked the CPU.

#include <immintrin.h>

#include <cstring>

#include "proact/crypto/kernels.hpp"

namespace proact::crypto::kernels {

namespace {

constexpr std::uint64_t kNibbleBit0 = 0x1111111111111111ull;

// Plane r, bit q lands in plane (r*W + q) % 4 at bit (r*W + q) / 4.
template <unsigned W>
constexpr std::uint64_t gather_mask(unsigned r, unsigned r2) {
  std::uint64_t m = 0;
  for (unsigned q = 0; q < W; ++q)
    if ((r * W + q) % 4 == r2) m |= std::uint64_t{1} << q;
  return m;
}

template <unsigned W>
constexpr unsigned gather_shift(unsigned r, unsigned r2) {
  return (r * W + (r2 + 4 - (r * W) % 4) % 4) / 4;
}

template <unsigned W, unsigned R2>
inline std::uint64_t gather(const std::uint64_t (&y)[4]) {
  return (_pext_u64(y[0], gather_mask<W>(0, R2)) << gather_shift<W>(0, R2)) |
         (_pext_u64(y[1], gather_mask<W>(1, R2)) << gather_shift<W>(1, R2)) |
         (_pext_u64(y[2], gather_mask<W>(2, R2)) << gather_shift<W>(2, R2)) |
         (_pext_u64(y[3], gather_mask<W>(3, R2)) << gather_shift<W>(3, R2));
}

template <unsigned W>
void permute_planes(SpongeState& state, const PermutationSpec& spec) {
  constexpr std::uint64_t ones = (std::uint64_t{1} << W) - 1;

  std::uint64_t limbs[4];
  std::memcpy(limbs, state.data(), sizeof limbs);
  std::uint64_t x[4];
  for (unsigned r = 0; r < 4; ++r) {
    const std::uint64_t m = kNibbleBit0 << r;
    x[r] = _pext_u64(limbs[0], m) | (_pext_u64(limbs[1], m) << 16) | (_pext_u64(limbs[2], m) << 32) |
           (_pext_u64(limbs[3], m) << 48);
  }

  for (unsigned round = 0; round < spec.rounds; ++round) {
    const auto& rc = spec.round_planes[round];
    const std::uint64_t x0 = x[0] ^ rc[0], x1 = x[1] ^ rc[1], x2 = x[2] ^ rc[2], x3 = x[3] ^ rc[3];

    // Algebraic normal form of the 4-bit S-box.
    const std::uint64_t x12 = x1 & x2, x03 = x0 & x3, x13 = x1 & x3, x23 = x2 & x3, x01 = x0 & x1;
    const std::uint64_t x123 = x12 & x3;
    const std::uint64_t y[4] = {
        x0 ^ x1 ^ x12 ^ x3,
        ones ^ x0 ^ x12 ^ x03 ^ x13 ^ x23 ^ x123,
        ones ^ x1 ^ x2 ^ x03 ^ x123,
        ones ^ x01 ^ x2 ^ x3 ^ x03 ^ x13 ^ (x01 & x3) ^ (x0 & x23),
    };

    x[0] = gather<W, 0>(y);
    x[1] = gather<W, 1>(y);
    x[2] = gather<W, 2>(y);
    x[3] = gather<W, 3>(y);
  }

  for (auto& l : limbs) l = 0;
  for (unsigned r = 0; r < 4; ++r) {
    const std::uint64_t m = kNibbleBit0 << r;
    limbs[0] |= _pdep_u64(x[r], m);
    limbs[1] |= _pdep_u64(x[r] >> 16, m);
    limbs[2] |= _pdep_u64(x[r] >> 32, m);
    limbs[3] |= _pdep_u64(x[r] >> 48, m);
  }
  std::memcpy(state.data(), limbs, sizeof limbs);
}

}  // namespace

void permute_bitsliced(SpongeState& state, const PermutationSpec& spec) {
  switch (spec.state_bits) {
    case 88: return permute_planes<22>(state, spec);
    case 240: return permute_planes<60>(state, spec);
    default: return permute_scalar(state, spec);
  }
}

}  // namespace proact::crypto::kernels
