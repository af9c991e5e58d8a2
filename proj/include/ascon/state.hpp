// Ascon-128/128a state and parameter types.
//
// Bit indexing convention used across the whole workbench: bit 0 of a word is
// the MOST significant bit, so index arithmetic like (i+1) mod 64 matches the
// usual cryptanalytic notation for this cipher.  Conversion to machine LSB
// order happens only inside the helpers below and never leaks through an
// interface.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ascon {

enum class Flavor { Ascon128, Ascon128a };

struct CipherParams {
  Flavor flavor = Flavor::Ascon128;
  uint64_t iv = 0;
  int pa_rounds = 12;
  int rate_words = 1;

  static constexpr CipherParams make(Flavor f) {
    if (f == Flavor::Ascon128)
      return {Flavor::Ascon128, 0x80400c0600000000ull, 12, 1};
    return {Flavor::Ascon128a, 0x80800c0800000000ull, 12, 2};
  }
};

struct AsconState {
  std::array<uint64_t, 5> w{};

  friend bool operator==(const AsconState&, const AsconState&) = default;
};

struct MasterKey {
  uint64_t k0 = 0;
  uint64_t k1 = 0;

  friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

struct NonceWords {
  uint64_t n3 = 0;  // placed in S0[3]
  uint64_t n4 = 0;  // placed in S0[4]

  friend bool operator==(const NonceWords&, const NonceWords&) = default;
};

// What the attacker observes after the reduced initialization: x0 for
// Ascon-128, x0 and x1 for Ascon-128a.
struct RateWords {
  std::array<uint64_t, 2> w{};
  int count = 1;

  bool any_nonzero() const { return w[0] != 0 || (count > 1 && w[1] != 0); }
  friend bool operator==(const RateWords&, const RateWords&) = default;
};

// --- bit helpers, paper order (bit 0 = MSB) ---

constexpr uint64_t word_bit(int k) { return 1ull << (63 - (k & 63)); }

constexpr int get_bit(uint64_t w, int k) { return int((w >> (63 - (k & 63))) & 1); }

constexpr uint64_t set_bit(uint64_t w, int k, int v) {
  const uint64_t m = word_bit(k);
  return v ? (w | m) : (w & ~m);
}

constexpr int mod64(int k) { return ((k % 64) + 64) % 64; }

// --- hex serialization, big-endian nibble order ---
// format_hex(0x80400c0600000000) == "80400c0600000000"

std::string format_hex(uint64_t w);
uint64_t parse_hex_word(const std::string& s);  // exactly 16 hex chars

}  // namespace ascon
