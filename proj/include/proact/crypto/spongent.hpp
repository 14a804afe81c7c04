#pragma once

// SPONGENT-88 (b=88, r=8, c=80, 45 rounds) and SPONGENT-224 (b=240, r=16,
// c=224, 120 rounds) sponge hashes over a PRESENT-style permutation.
//
// The permutation runs on whichever kernel kernels::active() selects; all
// kernels are bit-identical (see tests/crypto/kernel_equivalence_test.cpp).

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>

#include "proact/crypto/kernels.hpp"
#include "proact/wire/types.hpp"

namespace proact::crypto {

using wire::Bytes;
using wire::ByteView;
using wire::Digest;

enum class HashVariant : std::uint8_t { Spongent88 = 1, Spongent224 = 2 };

inline constexpr std::size_t kDigest88Len = 11;
inline constexpr std::size_t kDigest224Len = 28;
using Digest88 = std::array<std::uint8_t, kDigest88Len>;

constexpr std::size_t digest_len(HashVariant v) {
  return v == HashVariant::Spongent88 ? kDigest88Len : kDigest224Len;
}

const kernels::PermutationSpec& permutation_spec(HashVariant v);

/// Incremental sponge. Copyable so a shared prefix can be absorbed once and
/// forked.
class Spongent {
 public:
  explicit Spongent(HashVariant variant);

  void absorb(ByteView data);
  void absorb(std::uint8_t byte) { absorb(ByteView(&byte, 1)); }

  /// Pads and squeezes a copy of the state; the hasher stays usable.
  Bytes finalize() const;

  HashVariant variant() const noexcept { return variant_; }

 private:
  HashVariant variant_;
  const kernels::PermutationSpec* spec_;
  kernels::SpongeState state_{};
  std::uint8_t pending_[2] = {0, 0};
  std::size_t pending_len_ = 0;
};

Bytes spongent(HashVariant variant, ByteView message);
Digest spongent224(ByteView message);
Digest88 spongent88(ByteView message);

/// Hashes with the byte-wise reference permutation and a caller-provided
/// S-box. Selftest fault injection uses this to prove the vector checks
/// catch a corrupted table.
Bytes spongent_with_sbox(HashVariant variant, ByteView message, const std::array<std::uint8_t, 16>& sbox);

/// Memo for one-shot digests. SPONGENT is a pure function, so answering a
/// repeated (variant, message) from the memo cannot change any result. The
/// simulator installs one per run because every validator recomputes the
/// same digests the miner already computed.
class DigestMemo {
 public:
  /// `generation_bytes` bounds the message bytes held per generation; when the
  /// current generation fills up it replaces the previous one.
  explicit DigestMemo(std::size_t generation_bytes = std::size_t{32} << 20) : limit_(generation_bytes) {}

  const Bytes* find(HashVariant v, ByteView message);
  void insert(HashVariant v, ByteView message, const Bytes& digest);

  std::uint64_t hits() const noexcept { return hits_; }
  std::uint64_t misses() const noexcept { return misses_; }

 private:
  static std::string key(HashVariant v, ByteView message);
  std::size_t limit_;
  std::size_t current_bytes_ = 0;
  std::unordered_map<std::string, Bytes> current_;
  std::unordered_map<std::string, Bytes> previous_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

/// Installs a DigestMemo for the current thread for the lifetime of the
/// guard. Nested guards restore the outer memo.
class ScopedDigestMemo {
 public:
  explicit ScopedDigestMemo(DigestMemo& memo);
  ~ScopedDigestMemo();
  ScopedDigestMemo(const ScopedDigestMemo&) = delete;
  ScopedDigestMemo& operator=(const ScopedDigestMemo&) = delete;

 private:
  DigestMemo* previous_;
};

std::string to_hex(ByteView bytes);
Bytes from_hex(const std::string& hex);

}  // namespace proact::crypto
