// Round function of the Ascon permutation and the round-reduced
// initialization oracle, bit-exact against the 5-bit S-box table.

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

#include "ascon/state.hpp"

namespace ascon {

// S-box lookup.  x0 (word 0) is the most significant input bit, y0 the most
// significant output bit.  Throws std::out_of_range for x > 31.
unsigned sbox(unsigned x);

// Algebraic normal form of the S-box, one 32-bit coefficient mask per output.
// Monomial mask bit i corresponds to input variable x_i, so e.g. the monomial
// x4*x3 is mask (1<<4)|(1<<3).
struct SboxAnf {
  std::array<uint32_t, 5> coeff{};

  bool coefficient(int out, uint32_t varmask) const {
    return (coeff[out] >> varmask) & 1u;
  }
  bool coefficient(int out, std::initializer_list<int> vars) const {
    uint32_t m = 0;
    for (int v : vars) m |= 1u << v;
    return coefficient(out, m);
  }
  // Evaluate output `out` on the 5-bit input value (x0 = MSB of `x`).
  int evaluate(int out, unsigned x) const;
};

// Computed from the table by a Moebius transform; agrees with sbox() on all
// 32 inputs by construction of the transform (and by test).
SboxAnf sbox_anf();

// Rotation pairs of the linear diffusion layer, per word index.
constexpr std::array<std::array<int, 2>, 5> kLinearRotations{
    {{19, 28}, {61, 39}, {1, 6}, {10, 17}, {7, 41}}};

// w ^ (w >>> r1) ^ (w >>> r2).  With the MSB-first bit convention the
// cryptanalytic rotation >>> coincides with the machine rotate-right.
uint64_t linear_layer(int word_index, uint64_t w);

// Constant XORed into the low byte of x2 in round `round_index` of pa_rounds
// total.  The reduced-round oracle always uses the FIRST r constants,
// starting with 0xf0.
uint8_t round_constant(int round_index, int pa_rounds = 12);

namespace detail {

constexpr uint64_t rotr(uint64_t x, int n) {
  return (x >> n) | (x << (64 - n));
}

// One round on B interleaved states: constant addition, bitsliced S-box,
// linear layer.  The bitsliced sequence equals the table-defined S-box on
// every column (checked in tests against an independent scalar oracle).
template <int B>
inline void round_batch(std::array<std::array<uint64_t, B>, 5>& s, uint64_t rc) {
  std::array<uint64_t, B> t0, t1, t2, t3, t4;
  for (int b = 0; b < B; ++b) s[2][b] ^= rc;

  for (int b = 0; b < B; ++b) s[0][b] ^= s[4][b];
  for (int b = 0; b < B; ++b) s[4][b] ^= s[3][b];
  for (int b = 0; b < B; ++b) s[2][b] ^= s[1][b];
  for (int b = 0; b < B; ++b) t0[b] = ~s[0][b] & s[1][b];
  for (int b = 0; b < B; ++b) t1[b] = ~s[1][b] & s[2][b];
  for (int b = 0; b < B; ++b) t2[b] = ~s[2][b] & s[3][b];
  for (int b = 0; b < B; ++b) t3[b] = ~s[3][b] & s[4][b];
  for (int b = 0; b < B; ++b) t4[b] = ~s[4][b] & s[0][b];
  for (int b = 0; b < B; ++b) s[0][b] ^= t1[b];
  for (int b = 0; b < B; ++b) s[1][b] ^= t2[b];
  for (int b = 0; b < B; ++b) s[2][b] ^= t3[b];
  for (int b = 0; b < B; ++b) s[3][b] ^= t4[b];
  for (int b = 0; b < B; ++b) s[4][b] ^= t0[b];
  for (int b = 0; b < B; ++b) s[1][b] ^= s[0][b];
  for (int b = 0; b < B; ++b) s[0][b] ^= s[4][b];
  for (int b = 0; b < B; ++b) s[3][b] ^= s[2][b];
  for (int b = 0; b < B; ++b) s[2][b] = ~s[2][b];

  for (int w = 0; w < 5; ++w) {
    const int r1 = kLinearRotations[w][0], r2 = kLinearRotations[w][1];
    for (int b = 0; b < B; ++b)
      s[w][b] ^= rotr(s[w][b], r1) ^ rotr(s[w][b], r2);
  }
}

}  // namespace detail

// One full round: constant addition to x2, substitution layer, linear layer.
AsconState round(const AsconState& s, uint8_t rc);

// Applies rounds 0..r-1 of the initialization schedule in place.
void apply_initialization_rounds(AsconState& s, int r, const CipherParams& p);

// Round-reduced initialization: S0 = (IV, k0, k1, n3, n4), r rounds, rate
// words returned.  The trailing key XOR of the full initialization touches
// only x3/x4 and is deliberately absent: the return value equals what an
// attacker observes as P1 xor C1.  Throws std::out_of_range unless
// 1 <= r <= pa_rounds.
RateWords init_oracle(const MasterKey& key, const NonceWords& nonce, int r,
                      const CipherParams& p);

// Hot path used by the cube engine: B independent initializations that share
// one key.  Leaves the rate words in s[0]/s[1].
template <int B>
inline void init_rate_batch(std::array<std::array<uint64_t, B>, 5>& s,
                            const MasterKey& key, const CipherParams& p,
                            const uint64_t* n3, const uint64_t* n4, int r) {
  for (int b = 0; b < B; ++b) s[0][b] = p.iv;
  for (int b = 0; b < B; ++b) s[1][b] = key.k0;
  for (int b = 0; b < B; ++b) s[2][b] = key.k1;
  for (int b = 0; b < B; ++b) s[3][b] = n3[b];
  for (int b = 0; b < B; ++b) s[4][b] = n4[b];
  for (int i = 0; i < r; ++i)
    detail::round_batch<B>(s, uint64_t((0xf - i) << 4 | i));
}

}  // namespace ascon
