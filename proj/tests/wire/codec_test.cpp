#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace proact;
using namespace proact::wire;

TEST_CASE("single-owner sealed T1 command encodes to 199 bytes") {
  const Transaction tx = fixtures::t1_command();
  CHECK(tx.payload.size() == 8 + 100 + 11);
  CHECK(tx.signature.size() == 16);
  CHECK(tx.enc_par == "key_bits=64");
  CHECK(tx.hash_par == "rounds=45");
  const Bytes enc = encode_transaction(tx);
  CHECK(enc.size() == 199);
  CHECK(encoded_size(tx) == 199);
  CHECK(decode_transaction(enc) == tx);
}

TEST_CASE("public S1 data report encodes to 10354 bytes") {
  const Transaction tx = fixtures::t3_report();
  CHECK(tx.enc_id == 0);
  CHECK(tx.enc_par.empty());
  CHECK(tx.hash_par == "rounds=120");
  CHECK(tx.signature.size() == 64);
  const Bytes enc = encode_transaction(tx);
  CHECK(enc.size() == 10354);
  CHECK(decode_transaction(enc) == tx);
}

TEST_CASE("same command under the other tiers") {
  Transaction tx = fixtures::t1_command();
  for (auto [sc, size] : {std::pair{SecurityClass::S2_C2, 216u}, std::pair{SecurityClass::S1, 266u}}) {
    tx.security_class = sc;
    const auto& suite = crypto::suite_for(sc);
    tx.payload = crypto::seal(suite, fixtures::key(100).public_key, crypto::Nonce{}, fixtures::pattern(100));
    crypto::sign_transaction(tx, fixtures::key(10));
    CHECK(encode_transaction(tx).size() == size);
  }
}

TEST_CASE("decode rejects malformed input") {
  SUBCASE("empty") {
    try {
      decode_transaction({});
      FAIL("expected error");
    } catch (const WireError& e) {
      CHECK(e.code() == WireErrc::Truncated);
    }
  }
  SUBCASE("owner_count 3 with access_class Single") {
    Bytes enc = encode_transaction(fixtures::t1_command());
    // owner_count sits after creator(4) tx_seq(8) created_at(8) topic(4) access(1).
    enc[25] = 3;
    try {
      decode_transaction(enc);
      FAIL("expected error");
    } catch (const WireError& e) {
      CHECK(e.code() == WireErrc::Inconsistent);
    }
  }
  SUBCASE("trailing byte") {
    Bytes enc = encode_transaction(fixtures::t1_command());
    enc.push_back(0);
    CHECK_THROWS_AS(decode_transaction(enc), WireError);
  }
  SUBCASE("payload length overruns buffer") {
    const Transaction tx = fixtures::t1_command();
    Bytes enc = encode_transaction(tx);
    // payload_len is the 4 bytes before the payload.
    const std::size_t payload_len_at = enc.size() - 1 - tx.signature.size() - tx.payload.size() - 4;
    enc[payload_len_at + 3] = 0x7F;
    try {
      decode_transaction(enc);
      FAIL("expected error");
    } catch (const WireError& e) {
      CHECK(e.code() == WireErrc::Overrun);
    }
  }
  SUBCASE("every strict prefix fails") {
    const Bytes enc = encode_transaction(fixtures::t1_command());
    for (std::size_t n = 0; n < enc.size(); ++n) CHECK_THROWS_AS(decode_transaction(ByteView(enc).first(n)), WireError);
  }
}

TEST_CASE("encode rejects invariant violations") {
  Transaction tx = fixtures::t1_command();
  tx.owners.push_back(NodeId{101});
  CHECK_THROWS_AS(encode_transaction(tx), WireError);
  tx = fixtures::t1_command();
  tx.payload.clear();
  CHECK_THROWS_AS(encode_transaction(tx), WireError);
}

TEST_CASE("block sizes") {
  const Block empty = fixtures::make_block(1, Digest{}, {});
  CHECK(encode_block(empty).size() == 80);
  CHECK(encoded_size(empty) == 80);

  const Block one = fixtures::make_block(2, Digest{}, {fixtures::t1_command()});
  CHECK(encode_block(one).size() == 80 + 9 + 199);
  CHECK(decode_block(encode_block(one)) == one);
}

TEST_CASE("encode_block rejects a TA list that does not match") {
  Block b = fixtures::make_block(2, Digest{}, {fixtures::t1_command()});
  b.header.ta_list.clear();
  try {
    encode_block(b);
    FAIL("expected error");
  } catch (const WireError& e) {
    CHECK(e.code() == WireErrc::TaMismatch);
  }
}

namespace {

Transaction random_tx(std::mt19937_64& rng, std::uint64_t seq) {
  std::uniform_int_distribution<int> pick(0, 2);
  Transaction tx;
  tx.creator = NodeId{static_cast<std::uint32_t>(rng() % 1000)};
  tx.tx_seq = seq;
  tx.created_at_us = rng();
  tx.topic = static_cast<std::uint32_t>(rng() % 4);
  tx.access_class = static_cast<AccessClass>(pick(rng) + 1);
  const std::size_t owners =
      tx.access_class == AccessClass::Public ? 0 : tx.access_class == AccessClass::Single ? 1 : 2 + rng() % 8;
  for (std::size_t i = 0; i < owners; ++i) tx.owners.push_back(NodeId{static_cast<std::uint32_t>(rng())});
  tx.security_class = static_cast<SecurityClass>(pick(rng) + 1);
  tx.block_target = rng() % 2 ? BlockType::BlockT1 : BlockType::BlockT2;
  const auto& suite = crypto::suite_for(tx.security_class);
  const std::size_t plain = 1 + rng() % 300;
  tx.payload = tx.access_class == AccessClass::Public
                   ? fixtures::pattern(plain, static_cast<std::uint8_t>(rng()))
                   : crypto::seal(suite, fixtures::key(1).public_key, crypto::Nonce{}, fixtures::pattern(plain));
  crypto::sign_transaction(tx, fixtures::key(tx.creator.value));
  return tx;
}

}  // namespace

TEST_CASE("property: round trip and size arithmetic for generated transactions") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Transaction tx = random_tx(rng, static_cast<std::uint64_t>(i));
    const Bytes enc = encode_transaction(tx);
    const auto& suite = crypto::suite_for(tx.security_class);
    std::size_t plain = tx.payload.size();
    if (tx.access_class != AccessClass::Public) plain -= suite.seal_overhead();
    const std::size_t payload_wire = tx.access_class == AccessClass::Public ? plain : plain + 8 + suite.tag_len;
    const std::size_t expected = 31 + 4 * tx.owners.size() + 2 + tx.enc_par.size() + 2 + tx.hash_par.size() + 4 +
                                 payload_wire + 1 + suite.signature_len;
    CHECK(enc.size() == expected);
    const Transaction back = decode_transaction(enc);
    CHECK(back == tx);
    CHECK(encode_transaction(back) == enc);
  }
}

TEST_CASE("property: blocks round trip and TA mirrors transactions") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    std::vector<Transaction> txs;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int j = 0; j < n; ++j) txs.push_back(random_tx(rng, static_cast<std::uint64_t>(i * 10 + j)));
    const Block b = fixtures::make_block(static_cast<std::uint64_t>(i + 1), Digest{}, txs);
    for (std::size_t k = 0; k < txs.size(); ++k) {
      CHECK(b.header.ta_list[k].access_class == txs[k].access_class);
      CHECK(b.header.ta_list[k].owners == txs[k].owners);
    }
    const Bytes enc = encode_block(b);
    CHECK(decode_block(enc) == b);
    CHECK(enc.size() == encoded_size(b));
  }
}
