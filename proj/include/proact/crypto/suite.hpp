#pragma once

// Tiered simulation-grade crypto suites. Each suite fixes a signature tier,
// a hash variant, the resulting byte sizes, and processing-cost
// coefficients for the energy model.

#include <cstdint>
#include <stdexcept>
#include <string>

#include "proact/crypto/spongent.hpp"
#include "proact/wire/types.hpp"

namespace proact::crypto {

using wire::SecurityClass;

enum class CryptoErrc {
  UnsupportedTier,
  InvalidArgument,
  AccessDenied,
  Tampered,
  UnknownKey,
};

const char* to_string(CryptoErrc);

class CryptoError : public std::runtime_error {
 public:
  CryptoError(CryptoErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  CryptoErrc code() const noexcept { return code_; }

 private:
  CryptoErrc code_;
};

/// Permanent (S1) or temporary (S2) security; S2 resolves to C1 or C2 by
/// mission duration.
enum class SecurityLevel : std::uint8_t { Permanent, Temporary };

/// Processing cost in microjoules: per_op for each sign/verify/seal/open,
/// per_byte over the bytes processed.
struct CryptoCost {
  double per_op_uj = 0;
  double per_byte_uj = 0;
};

struct CryptoSuite {
  std::uint8_t suite_id = 0;
  SecurityClass security_class = SecurityClass::S1;
  unsigned key_bits = 0;
  std::size_t signature_len = 0;
  HashVariant hash_variant = HashVariant::Spongent224;
  std::size_t tag_len = 0;
  CryptoCost cost;

  std::uint8_t hash_id() const noexcept { return static_cast<std::uint8_t>(hash_variant); }
  std::string enc_par() const { return "key_bits=" + std::to_string(key_bits); }
  std::string hash_par() const { return hash_variant == HashVariant::Spongent88 ? "rounds=45" : "rounds=120"; }
  /// Sealed payload bytes beyond the plaintext: nonce + tag.
  std::size_t seal_overhead() const noexcept { return kSealNonceLen + tag_len; }

  static constexpr std::size_t kSealNonceLen = 8;
};

/// The three constructible suites.
const CryptoSuite& suite_for(SecurityClass sc);

/// Suite by enc_id / suite_id; throws UnknownKey for anything else.
const CryptoSuite& suite_by_id(std::uint8_t suite_id);

/// S1 -> 256-bit tier with SPONGENT-224. S2 -> 64-bit tier below 600 s,
/// 128-bit tier from 600 s up to 3600 s, both with SPONGENT-88.
const CryptoSuite& select_suite(SecurityLevel level, double mission_duration_s);

}  // namespace proact::crypto
