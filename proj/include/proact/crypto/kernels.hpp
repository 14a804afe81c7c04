#pragma once

// SPONGENT permutation kernels.
//
// State layout: bit k of the b-bit state is bit (k % 8) of byte k / 8. The
// state buffer is always 32 bytes; bytes at or beyond spec.state_bytes must
// be zero on entry and are zero on exit.
//
// The bit-permutation layer sends bit 4q + r to r * (b / 4) + q, i.e. it
// gathers bit r of every nibble into a contiguous (b / 4)-bit plane. The
// scalar kernel applies it bit by bit from a table; the AVX2 kernel builds
// the planes with movemask + pdep. The bitsliced kernel keeps the state as
// four planes (plane r, bit q = bit r of nibble q) for the whole call, so the
// S-box is a boolean circuit and the bit permutation is 16 pext per round.

#include <array>
#include <cstdint>
#include <string_view>

namespace proact::crypto::kernels {

inline constexpr std::size_t kStateBufferBytes = 32;
using SpongeState = std::array<std::uint8_t, kStateBufferBytes>;

inline constexpr std::array<std::uint8_t, 16> kSbox = {0xE, 0xD, 0xB, 0x0, 0x2, 0x1, 0x4, 0xF,
                                                      0x7, 0xA, 0x8, 0x5, 0x9, 0xC, 0x3, 0x6};

struct PermutationSpec {
  unsigned state_bits = 0;
  unsigned state_bytes = 0;
  unsigned rate_bytes = 0;
  unsigned digest_bytes = 0;
  unsigned rounds = 0;
  /// Per round: value XORed into byte 0 and byte 1 (LFSR counter) and into
  /// bytes state_bytes-1 and state_bytes-2 (its bit reversal).
  std::array<std::array<std::uint8_t, 4>, 128> round_constants{};
  /// The same constants laid out as a full state-sized XOR mask per round.
  std::array<SpongeState, 128> round_xor{};
  /// Destination bit index for every source bit of the permutation layer.
  std::array<std::uint16_t, 256> bit_destination{};
  /// round_xor in plane form.
  std::array<std::array<std::uint64_t, 4>, 128> round_planes{};
};

using PermuteFn = void (*)(SpongeState& state, const PermutationSpec& spec);

enum class Kind { Scalar, Avx2, Bitsliced };

void permute_scalar(SpongeState& state, const PermutationSpec& spec);
void permute_scalar_with_sbox(SpongeState& state, const PermutationSpec& spec,
                              const std::array<std::uint8_t, 16>& sbox);

#if defined(PROACT_HAVE_AVX2_KERNEL)
void permute_avx2(SpongeState& state, const PermutationSpec& spec);
void permute_bitsliced(SpongeState& state, const PermutationSpec& spec);
#endif

/// True when the kernel is compiled in and the running CPU supports it.
bool available(Kind kind);

/// Kernel used by the hash functions. Defaults to the fastest available one;
/// PROACT_SPONGENT_KERNEL=scalar forces the reference kernel, =avx2 the AVX2 one.
Kind active();
PermuteFn active_fn();

/// Overrides the selection (tests and benchmarks). Throws if unavailable.
void select(Kind kind);

std::string_view name(Kind kind);

}  // namespace proact::crypto::kernels
