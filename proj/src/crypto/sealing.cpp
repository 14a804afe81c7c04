#include "proact/crypto/sealing.hpp"

#include <algorithm>

#include "proact/wire/codec.hpp"

namespace proact::crypto {

namespace {

Bytes concat(std::initializer_list<ByteView> parts) {
  std::size_t n = 0;
  for (auto p : parts) n += p.size();
  Bytes out;
  out.reserve(n + 4);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

void xor_keystream(const Digest& recipient_public, const Nonce& nonce, ByteView in, std::uint8_t* out) {
  // Every block hashes key || nonce || counter; the shared prefix is absorbed once.
  Spongent prefix(HashVariant::Spongent224);
  prefix.absorb(recipient_public);
  prefix.absorb(nonce);
  std::size_t done = 0;
  for (std::uint32_t i = 0; done < in.size(); ++i) {
    Spongent h = prefix;
    const std::uint8_t counter[4] = {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(i >> 8),
                                     static_cast<std::uint8_t>(i >> 16), static_cast<std::uint8_t>(i >> 24)};
    h.absorb(ByteView(counter, 4));
    const Bytes ks = h.finalize();
    const std::size_t take = std::min(ks.size(), in.size() - done);
    for (std::size_t j = 0; j < take; ++j) out[done + j] = in[done + j] ^ ks[j];
    done += take;
  }
}

Bytes seal_tag(const CryptoSuite& suite, const Digest& recipient_public, const Nonce& nonce, ByteView ciphertext) {
  const Digest full = spongent224(concat({recipient_public, nonce, ciphertext}));
  return Bytes(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(suite.tag_len));
}

}  // namespace

Bytes sign(const CryptoSuite& suite, const Digest& creator_public, ByteView digest) {
  Bytes input = concat({creator_public, digest});
  Bytes sig;
  sig.reserve(suite.signature_len);
  for (std::uint8_t k = 0; sig.size() < suite.signature_len; ++k) {
    if (k == 1) input.push_back(1);
    if (k > 1) input.back() = k;
    const Digest d = spongent224(input);
    const std::size_t take = std::min(d.size(), suite.signature_len - sig.size());
    sig.insert(sig.end(), d.begin(), d.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return sig;
}

bool verify(const CryptoSuite& suite, const Digest& creator_public, ByteView digest, ByteView signature) {
  if (signature.size() != suite.signature_len) return false;
  const Bytes expected = sign(suite, creator_public, digest);
  return std::equal(expected.begin(), expected.end(), signature.begin());
}

Bytes seal(const CryptoSuite& suite, const Digest& recipient_public, const Nonce& nonce, ByteView plaintext) {
  if (plaintext.empty()) throw CryptoError(CryptoErrc::InvalidArgument, "cannot seal an empty plaintext");
  Bytes out(nonce.size() + plaintext.size());
  std::copy(nonce.begin(), nonce.end(), out.begin());
  xor_keystream(recipient_public, nonce, plaintext, out.data() + nonce.size());
  const Bytes tag = seal_tag(suite, recipient_public, nonce, ByteView(out).subspan(nonce.size()));
  out.insert(out.end(), tag.begin(), tag.end());
  return out;
}

Bytes open_with_key(const CryptoSuite& suite, const Digest& recipient_public, ByteView sealed) {
  if (sealed.size() <= suite.seal_overhead()) throw CryptoError(CryptoErrc::Tampered, "sealed payload too short");
  Nonce nonce{};
  std::copy_n(sealed.begin(), nonce.size(), nonce.begin());
  const ByteView ciphertext = sealed.subspan(nonce.size(), sealed.size() - suite.seal_overhead());
  const ByteView tag = sealed.subspan(sealed.size() - suite.tag_len);
  const Bytes expected = seal_tag(suite, recipient_public, nonce, ciphertext);
  if (!std::equal(expected.begin(), expected.end(), tag.begin()))
    throw CryptoError(CryptoErrc::Tampered, "seal tag mismatch");
  Bytes plain(ciphertext.size());
  xor_keystream(recipient_public, nonce, ciphertext, plain.data());
  return plain;
}

Bytes open(const CryptoSuite& suite, const KeyRegistry& registry, NodeId caller, Holder recipient, ByteView sealed) {
  if (!registry.can_open(caller, recipient)) throw CryptoError(CryptoErrc::AccessDenied, "caller lacks possession");
  const auto pub = registry.public_key(recipient);
  if (!pub) throw CryptoError(CryptoErrc::UnknownKey, "recipient key not registered");
  return open_with_key(suite, *pub, sealed);
}

const CryptoSuite& suite_of(const wire::Transaction& tx) { return suite_for(tx.security_class); }

Bytes signing_digest(const wire::Transaction& tx) {
  const auto variant = tx.hash_id == static_cast<std::uint8_t>(HashVariant::Spongent88) ? HashVariant::Spongent88
                                                                                        : HashVariant::Spongent224;
  return spongent(variant, wire::signing_bytes(tx));
}

void sign_transaction(wire::Transaction& tx, const KeyPair& creator) {
  const CryptoSuite& suite = suite_of(tx);
  const bool sealed = tx.access_class != wire::AccessClass::Public;
  tx.enc_id = sealed ? suite.suite_id : 0;
  tx.enc_par = sealed ? suite.enc_par() : std::string();
  tx.hash_id = suite.hash_id();
  tx.hash_par = suite.hash_par();
  tx.signature.clear();
  tx.signature = sign(suite, creator.public_key, signing_digest(tx));
}

bool verify_transaction(const wire::Transaction& tx, const Digest& creator_public) {
  const CryptoSuite& suite = suite_of(tx);
  if (tx.hash_id != suite.hash_id()) return false;
  return verify(suite, creator_public, signing_digest(tx), tx.signature);
}

}  // namespace proact::crypto
