#include "proact/crypto/suite.hpp"

#include <array>

namespace proact::crypto {

namespace {

// Costs grow with the tier; the absolute values are simulation defaults.
const std::array<CryptoSuite, 3> kSuites = {{
    {1, SecurityClass::S2_C1, 64, 16, HashVariant::Spongent88, kDigest88Len, {40.0, 0.4}},
    {2, SecurityClass::S2_C2, 128, 32, HashVariant::Spongent88, kDigest88Len, {110.0, 0.9}},
    {3, SecurityClass::S1, 256, 64, HashVariant::Spongent224, kDigest224Len, {420.0, 2.6}},
}};

}  // namespace

const char* to_string(CryptoErrc c) {
  switch (c) {
    case CryptoErrc::UnsupportedTier: return "unsupported tier";
    case CryptoErrc::InvalidArgument: return "invalid argument";
    case CryptoErrc::AccessDenied: return "access denied";
    case CryptoErrc::Tampered: return "tampered";
    case CryptoErrc::UnknownKey: return "unknown key";
  }
  return "?";
}

const CryptoSuite& suite_for(SecurityClass sc) {
  switch (sc) {
    case SecurityClass::S2_C1: return kSuites[0];
    case SecurityClass::S2_C2: return kSuites[1];
    case SecurityClass::S1: return kSuites[2];
  }
  throw CryptoError(CryptoErrc::UnknownKey, "unknown security class");
}

const CryptoSuite& suite_by_id(std::uint8_t suite_id) {
  for (const auto& s : kSuites)
    if (s.suite_id == suite_id) return s;
  throw CryptoError(CryptoErrc::UnknownKey, "unknown suite id " + std::to_string(suite_id));
}

const CryptoSuite& select_suite(SecurityLevel level, double mission_duration_s) {
  if (level == SecurityLevel::Permanent) return suite_for(SecurityClass::S1);
  if (!(mission_duration_s > 0))
    throw CryptoError(CryptoErrc::InvalidArgument, "mission duration must be positive for S2");
  if (mission_duration_s < 600.0) return suite_for(SecurityClass::S2_C1);
  if (mission_duration_s <= 3600.0) return suite_for(SecurityClass::S2_C2);
  throw CryptoError(CryptoErrc::UnsupportedTier, "no S2 tier for missions longer than 3600 s");
}

}  // namespace proact::crypto
