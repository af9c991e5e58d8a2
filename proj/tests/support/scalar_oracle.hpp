// Test-only oracle: evaluates the round and the initialization column by
// column straight from the S-box table and the per-word linear layer.  Kept
// deliberately independent of the bitsliced production path it checks.

#pragma once

#include "ascon/permutation.hpp"

namespace testsupport {

inline ascon::AsconState scalar_round(const ascon::AsconState& in, uint8_t rc) {
  ascon::AsconState s = in;
  s.w[2] ^= uint64_t(rc);
  ascon::AsconState sub{};
  for (int k = 0; k < 64; ++k) {
    unsigned column = 0;
    for (int w = 0; w < 5; ++w)
      column = (column << 1) | unsigned(ascon::get_bit(s.w[size_t(w)], k));
    const unsigned out = ascon::sbox(column);
    for (int w = 0; w < 5; ++w)
      sub.w[size_t(w)] =
          ascon::set_bit(sub.w[size_t(w)], k, int((out >> (4 - w)) & 1u));
  }
  for (int w = 0; w < 5; ++w) sub.w[size_t(w)] = ascon::linear_layer(w, sub.w[size_t(w)]);
  return sub;
}

inline ascon::RateWords scalar_init_oracle(const ascon::MasterKey& key,
                                           const ascon::NonceWords& nonce, int r,
                                           const ascon::CipherParams& p) {
  ascon::AsconState s{{p.iv, key.k0, key.k1, nonce.n3, nonce.n4}};
  for (int i = 0; i < r; ++i) s = scalar_round(s, ascon::round_constant(i, p.pa_rounds));
  ascon::RateWords out;
  out.count = p.rate_words;
  out.w[0] = s.w[0];
  if (p.rate_words > 1) out.w[1] = s.w[1];
  return out;
}

}  // namespace testsupport
