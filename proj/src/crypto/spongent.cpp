#include "proact/crypto/spongent.hpp"

#include <stdexcept>

namespace proact::crypto {

namespace {

struct VariantParams {
  unsigned state_bytes;
  unsigned rate_bytes;
  unsigned digest_bytes;
  unsigned rounds;
  unsigned iv;
  unsigned lfsr_bits;
};

constexpr VariantParams kParams88{11, 1, 11, 45, 0x05, 6};
constexpr VariantParams kParams224{30, 2, 28, 120, 0x01, 7};

unsigned lfsr_step(unsigned v, unsigned bits) {
  const unsigned top = (v >> (bits - 1)) & 1u;
  const unsigned next = (v >> (bits - 2)) & 1u;
  return ((v << 1) | (top ^ next)) & ((1u << bits) - 1u);
}

std::uint8_t rev8(unsigned v) {
  std::uint8_t r = 0;
  for (unsigned i = 0; i < 8; ++i)
    if ((v >> i) & 1u) r |= static_cast<std::uint8_t>(1u << (7 - i));
  return r;
}

kernels::PermutationSpec build_spec(const VariantParams& p) {
  kernels::PermutationSpec spec;
  spec.state_bytes = p.state_bytes;
  spec.state_bits = p.state_bytes * 8;
  spec.rate_bytes = p.rate_bytes;
  spec.digest_bytes = p.digest_bytes;
  spec.rounds = p.rounds;

  unsigned counter = p.iv;
  for (unsigned r = 0; r < p.rounds; ++r) {
    auto& rc = spec.round_constants[r];
    rc[0] = static_cast<std::uint8_t>(counter & 0xFF);
    rc[1] = static_cast<std::uint8_t>((counter >> 8) & 0xFF);
    rc[2] = rev8(counter);
    rc[3] = 0;
    auto& mask = spec.round_xor[r];
    mask[0] ^= rc[0];
    mask[1] ^= rc[1];
    mask[p.state_bytes - 1] ^= rc[2];
    mask[p.state_bytes - 2] ^= rc[3];
    counter = lfsr_step(counter, p.lfsr_bits);
  }

  const unsigned n = spec.state_bits;
  for (unsigned k = 0; k < n; ++k)
    spec.bit_destination[k] = static_cast<std::uint16_t>(k == n - 1 ? n - 1 : (k * n / 4) % (n - 1));

  for (unsigned r = 0; r < p.rounds; ++r)
    for (unsigned k = 0; k < n; ++k)
      if ((spec.round_xor[r][k / 8] >> (k % 8)) & 1u) spec.round_planes[r][k % 4] |= std::uint64_t{1} << (k / 4);
  return spec;
}

thread_local DigestMemo* tl_memo = nullptr;

void squeeze(kernels::SpongeState& state, const kernels::PermutationSpec& spec, kernels::PermuteFn permute,
             std::uint8_t* out) {
  std::size_t produced = 0;
  for (;;) {
    for (unsigned i = 0; i < spec.rate_bytes && produced < spec.digest_bytes; ++i) out[produced++] = state[i];
    if (produced >= spec.digest_bytes) return;
    permute(state, spec);
  }
}

}  // namespace

const kernels::PermutationSpec& permutation_spec(HashVariant v) {
  static const kernels::PermutationSpec s88 = build_spec(kParams88);
  static const kernels::PermutationSpec s224 = build_spec(kParams224);
  switch (v) {
    case HashVariant::Spongent88: return s88;
    case HashVariant::Spongent224: return s224;
  }
  throw std::invalid_argument("unknown SPONGENT variant");
}

Spongent::Spongent(HashVariant variant) : variant_(variant), spec_(&permutation_spec(variant)) {}

void Spongent::absorb(ByteView data) {
  const auto permute = kernels::active_fn();
  const unsigned rate = spec_->rate_bytes;
  std::size_t i = 0;
  while (i < data.size()) {
    pending_[pending_len_++] = data[i++];
    if (pending_len_ == rate) {
      for (unsigned j = 0; j < rate; ++j) state_[j] ^= pending_[j];
      permute(state_, *spec_);
      pending_len_ = 0;
    }
  }
}

Bytes Spongent::finalize() const {
  const auto permute = kernels::active_fn();
  kernels::SpongeState s = state_;
  std::uint8_t block[2] = {0, 0};
  for (std::size_t j = 0; j < pending_len_; ++j) block[j] = pending_[j];
  block[pending_len_] = 0x80;
  for (unsigned j = 0; j < spec_->rate_bytes; ++j) s[j] ^= block[j];
  permute(s, *spec_);
  Bytes out(spec_->digest_bytes);
  squeeze(s, *spec_, permute, out.data());
  return out;
}

Bytes spongent(HashVariant variant, ByteView message) {
  if (tl_memo != nullptr) {
    if (const Bytes* hit = tl_memo->find(variant, message)) return *hit;
  }
  Spongent h(variant);
  h.absorb(message);
  Bytes out = h.finalize();
  if (tl_memo != nullptr) tl_memo->insert(variant, message, out);
  return out;
}

Digest spongent224(ByteView message) {
  const Bytes d = spongent(HashVariant::Spongent224, message);
  Digest out{};
  std::copy(d.begin(), d.end(), out.begin());
  return out;
}

Digest88 spongent88(ByteView message) {
  const Bytes d = spongent(HashVariant::Spongent88, message);
  Digest88 out{};
  std::copy(d.begin(), d.end(), out.begin());
  return out;
}

Bytes spongent_with_sbox(HashVariant variant, ByteView message, const std::array<std::uint8_t, 16>& sbox) {
  const auto& spec = permutation_spec(variant);
  const unsigned rate = spec.rate_bytes;
  kernels::SpongeState s{};
  Bytes padded(message.begin(), message.end());
  padded.push_back(0x80);
  while (padded.size() % rate != 0) padded.push_back(0);
  for (std::size_t k = 0; k < padded.size(); k += rate) {
    for (unsigned j = 0; j < rate; ++j) s[j] ^= padded[k + j];
    kernels::permute_scalar_with_sbox(s, spec, sbox);
  }
  Bytes out(spec.digest_bytes);
  std::size_t produced = 0;
  for (;;) {
    for (unsigned i = 0; i < rate && produced < out.size(); ++i) out[produced++] = s[i];
    if (produced >= out.size()) break;
    kernels::permute_scalar_with_sbox(s, spec, sbox);
  }
  return out;
}

std::string DigestMemo::key(HashVariant v, ByteView message) {
  std::string k;
  k.reserve(message.size() + 1);
  k.push_back(static_cast<char>(v));
  k.append(reinterpret_cast<const char*>(message.data()), message.size());
  return k;
}

const Bytes* DigestMemo::find(HashVariant v, ByteView message) {
  const std::string k = key(v, message);
  if (auto it = current_.find(k); it != current_.end()) {
    ++hits_;
    return &it->second;
  }
  if (auto it = previous_.find(k); it != previous_.end()) {
    ++hits_;
    auto [pos, _] = current_.emplace(k, it->second);
    current_bytes_ += k.size();
    return &pos->second;
  }
  ++misses_;
  return nullptr;
}

void DigestMemo::insert(HashVariant v, ByteView message, const Bytes& digest) {
  if (current_bytes_ >= limit_) {
    previous_ = std::move(current_);
    current_.clear();
    current_bytes_ = 0;
  }
  std::string k = key(v, message);
  current_bytes_ += k.size();
  current_.insert_or_assign(std::move(k), digest);
}

ScopedDigestMemo::ScopedDigestMemo(DigestMemo& memo) : previous_(tl_memo) { tl_memo = &memo; }
ScopedDigestMemo::~ScopedDigestMemo() { tl_memo = previous_; }

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xF]);
  }
  return s;
}

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex string");
  auto nibble = [](char c) -> std::uint8_t {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
    throw std::invalid_argument("invalid hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint8_t>((nibble(hex[2 * i]) << 4) | nibble(hex[2 * i + 1]));
  return out;
}

}  // namespace proact::crypto
