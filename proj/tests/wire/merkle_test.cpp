#include "doctest.h"
#include "fixtures.hpp"
#include "proact/crypto/spongent.hpp"

using namespace proact;
using namespace proact::wire;

namespace {

Digest leaf(std::uint8_t v) { return crypto::spongent224(Bytes{v}); }

Digest parent(const Digest& l, const Digest& r) {
  Bytes b(l.begin(), l.end());
  b.insert(b.end(), r.begin(), r.end());
  return crypto::spongent224(b);
}

}  // namespace

TEST_CASE("merkle root shapes") {
  const Digest d1 = leaf(1), d2 = leaf(2), d3 = leaf(3);
  CHECK(merkle_root(std::vector<Digest>{d1}) == d1);
  CHECK(merkle_root(std::vector<Digest>{d1, d2}) == parent(d1, d2));
  CHECK(merkle_root(std::vector<Digest>{d1, d2, d3}) == parent(parent(d1, d2), parent(d3, d3)));
  CHECK_THROWS_AS(merkle_root(std::vector<Digest>{}), std::invalid_argument);
}

TEST_CASE("block hash covers the header and the TA list") {
  const Block b = fixtures::make_block(3, Digest{}, {fixtures::t1_command()});
  const Bytes h = encode_header(b.header);
  CHECK(block_hash(h) == block_hash(h));
  CHECK(block_hash(h).size() == 28);

  Bytes flipped = h;
  flipped[80 + 3] ^= 0x01;  // TA entry access-class byte
  CHECK(block_hash(flipped) != block_hash(h));

  BlockHeader other = b.header;
  other.prev_hash[0] ^= 1;
  CHECK(block_hash(other) != block_hash(b.header));
}

TEST_CASE("changing a transaction changes the merkle root") {
  Transaction tx = fixtures::t1_command();
  const Digest before = merkle_root_of(std::vector<Transaction>{tx});
  tx.payload[10] ^= 0x40;
  CHECK(merkle_root_of(std::vector<Transaction>{tx}) != before);
}
