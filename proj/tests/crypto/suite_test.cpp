#include "doctest.h"
#include "proact/crypto/suite.hpp"

using namespace proact;
using namespace proact::crypto;

TEST_CASE("suite selection by class and mission duration") {
  const auto& s1 = select_suite(SecurityLevel::Permanent, 300);
  CHECK(s1.key_bits == 256);
  CHECK(s1.hash_variant == HashVariant::Spongent224);
  CHECK(s1.signature_len == 64);
  CHECK(s1.tag_len == 28);

  const auto& c1 = select_suite(SecurityLevel::Temporary, 540);
  CHECK(c1.key_bits == 64);
  CHECK(c1.hash_variant == HashVariant::Spongent88);
  CHECK(c1.signature_len == 16);
  CHECK(c1.tag_len == 11);

  const auto& c2 = select_suite(SecurityLevel::Temporary, 600);
  CHECK(c2.key_bits == 128);
  CHECK(c2.hash_variant == HashVariant::Spongent88);
  CHECK(c2.signature_len == 32);

  CHECK(select_suite(SecurityLevel::Temporary, 3600).key_bits == 128);
  CHECK(select_suite(SecurityLevel::Permanent, 99999).key_bits == 256);
  try {
    select_suite(SecurityLevel::Temporary, 3600.5);
    FAIL("expected error");
  } catch (const CryptoError& e) {
    CHECK(e.code() == CryptoErrc::UnsupportedTier);
  }
  CHECK_THROWS_AS(select_suite(SecurityLevel::Temporary, 0), CryptoError);
}

TEST_CASE("exactly three suites, costs increase with tier") {
  const auto& a = suite_for(wire::SecurityClass::S2_C1);
  const auto& b = suite_for(wire::SecurityClass::S2_C2);
  const auto& c = suite_for(wire::SecurityClass::S1);
  CHECK(a.cost.per_op_uj < b.cost.per_op_uj);
  CHECK(b.cost.per_op_uj < c.cost.per_op_uj);
  CHECK(a.cost.per_byte_uj < b.cost.per_byte_uj);
  CHECK(b.cost.per_byte_uj < c.cost.per_byte_uj);
  for (const auto* s : {&a, &b, &c}) {
    CHECK(&suite_by_id(s->suite_id) == s);
    CHECK(s->signature_len == s->key_bits / 4);
    CHECK(s->tag_len == digest_len(s->hash_variant));
  }
  CHECK_THROWS_AS(suite_by_id(0), CryptoError);
  CHECK_THROWS_AS(suite_by_id(4), CryptoError);
}
