#include "proact/crypto/kernels.hpp"

namespace proact::crypto::kernels {

namespace {

constexpr std::array<std::uint8_t, 256> make_byte_sbox(const std::array<std::uint8_t, 16>& s) {
  std::array<std::uint8_t, 256> t{};
  for (unsigned v = 0; v < 256; ++v) t[v] = static_cast<std::uint8_t>((s[v >> 4] << 4) | s[v & 0xF]);
  return t;
}

constexpr auto kByteSbox = make_byte_sbox(kSbox);

void permute_with_table(SpongeState& state, const PermutationSpec& spec, const std::array<std::uint8_t, 256>& sbox) {
  const unsigned n = spec.state_bytes;
  for (unsigned round = 0; round < spec.rounds; ++round) {
    const auto& rc = spec.round_constants[round];
    state[0] ^= rc[0];
    state[1] ^= rc[1];
    state[n - 1] ^= rc[2];
    state[n - 2] ^= rc[3];

    for (unsigned i = 0; i < n; ++i) state[i] = sbox[state[i]];

    SpongeState out{};
    for (unsigned i = 0; i < n; ++i) {
      const std::uint8_t byte = state[i];
      for (unsigned j = 0; j < 8; ++j) {
        const unsigned dst = spec.bit_destination[8 * i + j];
        out[dst >> 3] |= static_cast<std::uint8_t>(((byte >> j) & 1u) << (dst & 7u));
      }
    }
    state = out;
  }
}

}  // namespace

void permute_scalar(SpongeState& state, const PermutationSpec& spec) { permute_with_table(state, spec, kByteSbox); }

void permute_scalar_with_sbox(SpongeState& state, const PermutationSpec& spec,
                              const std::array<std::uint8_t, 16>& sbox) {
  permute_with_table(state, spec, make_byte_sbox(sbox));
}

}  // namespace proact::crypto::kernels
