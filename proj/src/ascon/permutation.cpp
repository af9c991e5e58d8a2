#include "ascon/permutation.hpp"

#include <bit>
#include <charconv>
#include <cstdio>

namespace ascon {

namespace {

constexpr std::array<uint8_t, 32> kSboxTable{
    4,  11, 31, 20, 26, 21, 9,  2,  27, 5,  8,  18, 29, 3,  6,  28,
    30, 19, 7,  14, 0,  13, 17, 24, 16, 12, 1,  25, 22, 10, 15, 23};

// Maps a 5-bit input value (x0 = MSB) to the mask of variables set in it
// (mask bit i = x_i), i.e. reverses the 5-bit string.
constexpr uint32_t value_to_varmask(unsigned v) {
  uint32_t m = 0;
  for (int i = 0; i < 5; ++i)
    if ((v >> (4 - i)) & 1u) m |= 1u << i;
  return m;
}

}  // namespace

unsigned sbox(unsigned x) {
  if (x > 31) throw std::out_of_range("sbox: input exceeds 5 bits");
  return kSboxTable[x];
}

int SboxAnf::evaluate(int out, unsigned x) const {
  const uint32_t ones = value_to_varmask(x);
  int acc = 0;
  for (uint32_t m = 0; m < 32; ++m)
    if ((coeff[out] >> m) & 1u)
      acc ^= int((m & ~ones) == 0);  // monomial m evaluates to 1 iff m subset of ones
  return acc;
}

SboxAnf sbox_anf() {
  SboxAnf anf;
  for (int out = 0; out < 5; ++out) {
    // Truth table indexed by variable mask, then the subset-sum Moebius
    // transform yields ANF coefficients in place.
    std::array<int, 32> f{};
    for (unsigned v = 0; v < 32; ++v)
      f[value_to_varmask(v)] = (kSboxTable[v] >> (4 - out)) & 1;
    for (int i = 0; i < 5; ++i)
      for (uint32_t m = 0; m < 32; ++m)
        if (m & (1u << i)) f[m] ^= f[m & ~(1u << i)];
    uint32_t bits = 0;
    for (uint32_t m = 0; m < 32; ++m)
      if (f[m]) bits |= 1u << m;
    anf.coeff[out] = bits;
  }
  return anf;
}

uint64_t linear_layer(int word_index, uint64_t w) {
  if (word_index < 0 || word_index > 4)
    throw std::out_of_range("linear_layer: word index must be 0..4");
  const auto [r1, r2] = kLinearRotations[word_index];
  return w ^ detail::rotr(w, r1) ^ detail::rotr(w, r2);
}

uint8_t round_constant(int round_index, int pa_rounds) {
  if (round_index < 0 || round_index >= pa_rounds)
    throw std::out_of_range("round_constant: round index out of schedule");
  return uint8_t(((0xf - round_index) << 4) | round_index);
}

AsconState round(const AsconState& s, uint8_t rc) {
  std::array<std::array<uint64_t, 1>, 5> b;
  for (int i = 0; i < 5; ++i) b[i][0] = s.w[i];
  detail::round_batch<1>(b, rc);
  AsconState out;
  for (int i = 0; i < 5; ++i) out.w[i] = b[i][0];
  return out;
}

void apply_initialization_rounds(AsconState& s, int r, const CipherParams& p) {
  for (int i = 0; i < r; ++i) s = round(s, round_constant(i, p.pa_rounds));
}

RateWords init_oracle(const MasterKey& key, const NonceWords& nonce, int r,
                      const CipherParams& p) {
  if (r < 1 || r > p.pa_rounds)
    throw std::out_of_range("init_oracle: round count out of range");
  AsconState s{{p.iv, key.k0, key.k1, nonce.n3, nonce.n4}};
  apply_initialization_rounds(s, r, p);
  RateWords out;
  out.count = p.rate_words;
  out.w[0] = s.w[0];
  if (p.rate_words > 1) out.w[1] = s.w[1];
  return out;
}

std::string format_hex(uint64_t w) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
  return std::string(buf, 16);
}

uint64_t parse_hex_word(const std::string& s) {
  if (s.size() != 16) throw std::invalid_argument("hex word must be 16 chars");
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + 16, v, 16);
  if (ec != std::errc() || p != s.data() + 16)
    throw std::invalid_argument("invalid hex word: " + s);
  return v;
}

}  // namespace ascon
