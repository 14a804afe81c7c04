// AVX2 + BMI2 SPONGENT permutation. Built with -mavx2 -mbmi2 and only
// called after kernels::available(Kind::Avx2) has checked the CPU.

#include <immintrin.h>

#include <cstring>

#include "proact/crypto/kernels.hpp"

namespace proact::crypto::kernels {

namespace {

struct Avx2Tables {
  __m256i sbox;
  __m256i low_nibble;
  __m256i width_mask;
};

inline void or_at(std::uint64_t (&limbs)[4], std::uint64_t plane, unsigned offset) {
  const unsigned limb = offset >> 6;
  const unsigned shift = offset & 63u;
  limbs[limb] |= plane << shift;
  if (shift != 0 && limb + 1 < 4) limbs[limb + 1] |= plane >> (64 - shift);
}

}  // namespace

void permute_avx2(SpongeState& state, const PermutationSpec& spec) {
  alignas(32) std::uint8_t width_bytes[32] = {};
  std::memset(width_bytes, 0xFF, spec.state_bytes);

  const Avx2Tables t{
      _mm256_setr_epi8(0xE, 0xD, 0xB, 0x0, 0x2, 0x1, 0x4, 0xF, 0x7, 0xA, 0x8, 0x5, 0x9, 0xC, 0x3, 0x6, 0xE, 0xD, 0xB,
                       0x0, 0x2, 0x1, 0x4, 0xF, 0x7, 0xA, 0x8, 0x5, 0x9, 0xC, 0x3, 0x6),
      _mm256_set1_epi8(0x0F),
      _mm256_load_si256(reinterpret_cast<const __m256i*>(width_bytes)),
  };

  const unsigned n = spec.state_bytes;
  const unsigned plane_bits = spec.state_bits / 4;
  const std::uint32_t byte_mask = n >= 32 ? 0xFFFFFFFFu : ((1u << n) - 1u);

  __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(state.data()));

  for (unsigned round = 0; round < spec.rounds; ++round) {
    s = _mm256_xor_si256(s, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(spec.round_xor[round].data())));

    // S-box layer on both nibbles; padding bytes are cleared afterwards.
    const __m256i lo = _mm256_and_si256(s, t.low_nibble);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(s, 4), t.low_nibble);
    s = _mm256_or_si256(_mm256_shuffle_epi8(t.sbox, lo), _mm256_slli_epi16(_mm256_shuffle_epi8(t.sbox, hi), 4));
    s = _mm256_and_si256(s, t.width_mask);

    // Bit r of nibble q moves to r * plane_bits + q.
    std::uint64_t limbs[4] = {0, 0, 0, 0};
    const __m256i shifted_lo[4] = {_mm256_slli_epi16(s, 7), _mm256_slli_epi16(s, 6), _mm256_slli_epi16(s, 5),
                                   _mm256_slli_epi16(s, 4)};
    const __m256i shifted_hi[4] = {_mm256_slli_epi16(s, 3), _mm256_slli_epi16(s, 2), _mm256_slli_epi16(s, 1), s};
    for (unsigned r = 0; r < 4; ++r) {
      const std::uint32_t even = static_cast<std::uint32_t>(_mm256_movemask_epi8(shifted_lo[r])) & byte_mask;
      const std::uint32_t odd = static_cast<std::uint32_t>(_mm256_movemask_epi8(shifted_hi[r])) & byte_mask;
      const std::uint64_t plane =
          _pdep_u64(even, 0x5555555555555555ull) | _pdep_u64(odd, 0xAAAAAAAAAAAAAAAAull);
      or_at(limbs, plane, r * plane_bits);
    }
    s = _mm256_set_epi64x(static_cast<long long>(limbs[3]), static_cast<long long>(limbs[2]),
                          static_cast<long long>(limbs[1]), static_cast<long long>(limbs[0]));
  }

  _mm256_storeu_si256(reinterpret_cast<__m256i*>(state.data()), s);
}

}  // namespace proact::crypto::kernels
