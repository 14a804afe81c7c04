#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace proact;
using namespace proact::crypto;
using wire::NodeId;

TEST_CASE("sign and verify") {
  const auto& suite = suite_for(wire::SecurityClass::S2_C1);
  const KeyPair creator = fixtures::key(10), other = fixtures::key(11);
  const Bytes digest = spongent(suite.hash_variant, fixtures::pattern(40));
  const Bytes sig = sign(suite, creator.public_key, digest);
  CHECK(sig.size() == 16);
  CHECK(verify(suite, creator.public_key, digest, sig));
  CHECK_FALSE(verify(suite, other.public_key, digest, sig));

  const auto& s1 = suite_for(wire::SecurityClass::S1);
  const Bytes long_sig = sign(s1, creator.public_key, digest);
  CHECK(long_sig.size() == 64);
  CHECK(std::equal(sig.begin(), sig.end(), long_sig.begin()));
}

TEST_CASE("transaction signatures") {
  wire::Transaction tx = fixtures::t1_command();
  CHECK(verify_transaction(tx, fixtures::key(10).public_key));
  SUBCASE("forged creator") {
    tx.creator = NodeId{12};
    CHECK_FALSE(verify_transaction(tx, fixtures::key(12).public_key));
  }
  SUBCASE("flipped payload byte") {
    tx.payload[20] ^= 1;
    CHECK_FALSE(verify_transaction(tx, fixtures::key(10).public_key));
  }
  SUBCASE("signed by an attacker key") {
    crypto::sign_transaction(tx, fixtures::key(666));
    CHECK_FALSE(verify_transaction(tx, fixtures::key(10).public_key));
  }
}

TEST_CASE("seal and open with possession checks") {
  KeyRegistry reg;
  const NodeId ca{1}, owner{100}, intruder{101};
  reg.add_ca(ca);
  reg.register_node(owner, fixtures::key(100));
  reg.register_node(intruder, fixtures::key(101));
  const auto& suite = suite_for(wire::SecurityClass::S2_C1);
  const Bytes plain = fixtures::pattern(100);
  const Bytes sealed = seal(suite, fixtures::key(100).public_key, Nonce{9}, plain);
  CHECK(sealed.size() == 8 + 100 + 11);

  CHECK(open(suite, reg, owner, Holder::node(owner), sealed) == plain);
  CHECK(open(suite, reg, ca, Holder::node(owner), sealed) == plain);
  try {
    open(suite, reg, intruder, Holder::node(owner), sealed);
    FAIL("expected error");
  } catch (const CryptoError& e) {
    CHECK(e.code() == CryptoErrc::AccessDenied);
  }
  Bytes bad = sealed;
  bad[30] ^= 0x80;
  try {
    open(suite, reg, owner, Holder::node(owner), bad);
    FAIL("expected error");
  } catch (const CryptoError& e) {
    CHECK(e.code() == CryptoErrc::Tampered);
  }
}

TEST_CASE("group keys") {
  KeyRegistry reg;
  const NodeId ca{1};
  reg.add_ca(ca);
  std::vector<NodeId> members;
  for (std::uint32_t i = 0; i < 7; ++i) members.push_back(NodeId{200 + i});
  const KeyPair& gk = reg.group_keygen(ca, members, 5);
  const auto holder = reg.holder_for_owners(members);
  REQUIRE(holder);
  CHECK(holder->kind == Holder::Kind::Group);
  const auto& suite = suite_for(wire::SecurityClass::S2_C2);
  const Bytes sealed = seal(suite, gk.public_key, Nonce{}, fixtures::pattern(100));
  for (NodeId m : members) CHECK(open(suite, reg, m, *holder, sealed) == fixtures::pattern(100));
  CHECK(open(suite, reg, ca, *holder, sealed) == fixtures::pattern(100));
  CHECK_THROWS_AS(open(suite, reg, NodeId{300}, *holder, sealed), CryptoError);
  CHECK_THROWS_AS(reg.group_keygen(ca, {}, 5), CryptoError);
  CHECK(&reg.group_keygen(ca, members, 5) == &gk);
}

TEST_CASE("property: seal/open round trip over lengths and suites, any corruption detected") {
  std::mt19937_64 rng(3);
  const Digest pub = fixtures::key(100).public_key;
  for (auto sc : {wire::SecurityClass::S2_C1, wire::SecurityClass::S2_C2, wire::SecurityClass::S1}) {
    const auto& suite = suite_for(sc);
    for (std::size_t len = 1; len <= 4096; len += (len < 64 ? 1 : 97)) {
      const Bytes plain = fixtures::pattern(len, static_cast<std::uint8_t>(rng()));
      Nonce n{};
      for (auto& b : n) b = static_cast<std::uint8_t>(rng());
      const Bytes sealed = seal(suite, pub, n, plain);
      REQUIRE(sealed.size() == len + suite.seal_overhead());
      CHECK(open_with_key(suite, pub, sealed) == plain);
      Bytes bad = sealed;
      bad[rng() % bad.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
      CHECK_THROWS_AS(open_with_key(suite, pub, bad), CryptoError);
    }
  }
}
