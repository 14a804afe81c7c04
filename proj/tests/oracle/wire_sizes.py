#!/usr/bin/env python3
"""Byte-count oracle for the canonical transaction/block layouts.

Sums field widths directly from the layout table; shares no code with the
C++ codec. Prints the fixture sizes and the overhead ratio (S_TB - S_TO) / S_TO.
"""

FIXED = 4 + 8 + 8 + 4 + 1 + 2 + 1 + 1 + 1 + 1  # creator..hash_id, without the length prefixes
assert FIXED == 31
HEADER = 1 + 8 + 1 + 4 + 8 + 28 + 28 + 2
assert HEADER == 80

SUITES = {
    # name: (signature bytes, tag bytes, enc_par, hash_par)
    "S2_C1": (16, 11, "key_bits=64", "rounds=45"),
    "S2_C2": (32, 11, "key_bits=128", "rounds=45"),
    "S1": (64, 28, "key_bits=256", "rounds=120"),
}
NONCE = 8


def tx_size(plaintext, owners, suite, public):
    sig, tag, enc_par, hash_par = SUITES[suite]
    if public:
        enc_par = ""
        payload = plaintext
    else:
        payload = NONCE + plaintext + tag
    return FIXED + 4 * owners + (2 + len(enc_par)) + (2 + len(hash_par)) + (4 + payload) + (1 + sig)


def ta_entry(owners):
    return 2 + 1 + 2 + 4 * owners


def bto(plaintext, encoded):
    return (encoded - plaintext) / plaintext


if __name__ == "__main__":
    t1 = tx_size(100, 1, "S2_C1", public=False)
    t3 = tx_size(10240, 0, "S1", public=True)
    print("single_owner_100B_S2_C1", t1, f"{bto(100, t1):.6f}")
    print("public_10240B_S1", t3, f"{bto(10240, t3):.6f}")
    print("single_owner_100B_S2_C2", tx_size(100, 1, "S2_C2", False))
    print("single_owner_100B_S1", tx_size(100, 1, "S1", False))
    print("empty_block", HEADER)
    print("block_one_single_owner_tx", HEADER + ta_entry(1) + t1)
