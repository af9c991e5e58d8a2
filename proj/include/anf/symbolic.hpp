// Symbolic round-reduced initialization: every state bit as an exact ANF.
//
// Word 0 starts as folded IV constants, words 1/2 as key variables (or a
// concrete key), words 3/4 per a slot assignment.  Advancement happens in
// half-round steps: the substitution half (which includes the round-constant
// addition) and the linear half.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "anf/poly.hpp"
#include "ascon/state.hpp"
#include "cube/spec.hpp"

namespace anf {

struct Slot {
  enum class Kind { Fixed, CubeVar, NonceSym };
  Kind kind = Kind::NonceSym;
  int value = 0;  // Fixed: 0/1, CubeVar: variable index

  static Slot fixed(int v) { return {Kind::Fixed, v}; }
  static Slot cube(int v) { return {Kind::CubeVar, v}; }
  static Slot nonce() { return {Kind::NonceSym, 0}; }
};

using WordSlots = std::array<Slot, 64>;

struct SymbolicState {
  ascon::CipherParams params;
  std::array<std::array<Polynomial, 64>, 5> bits;
  int half_steps = 0;               // 2 per full round
  size_t monomial_limit = 4'000'000;  // per bit; exceeded -> ResourceLimitError

  double rounds_done() const { return half_steps / 2.0; }
  const Polynomial& bit(int word, int k) const {
    return bits[size_t(word)][size_t(ascon::mod64(k))];
  }
  bool has_key_vars() const;
};

// Builds S0.  When `concrete_key` is set, words 1/2 hold constants instead of
// k0/k1 variables.  Rejects a cube variable appearing twice in one word.
SymbolicState symbolic_init(ascon::Flavor flavor, const WordSlots& slots3,
                            const WordSlots& slots4,
                            const std::optional<ascon::MasterKey>& concrete_key = {});

// Slot assignment induced by a cube spec: placements become cube variables,
// everything else is pinned to the concrete base-nonce bit (fixed bits and
// the free-bit policy included).
std::pair<WordSlots, WordSlots> slots_from_cube_spec(const cube::CubeSpec& spec);

// One substitution half-step (round constant + S-box layer) or one linear
// half-step, whichever is due next.
void advance_half_step(SymbolicState& s);

// Advances to `target_rounds` (multiple of 0.5).  Symbolic keys are allowed
// up to two full rounds; past that a concrete key must have been substituted.
void advance_to(SymbolicState& s, double target_rounds);

// Output polynomials of the round S-box applied to column `k` of the current
// state, with the due round constant folded in, without advancing the state.
// Valid when the state sits at a round boundary.
std::array<Polynomial, 5> sbox_column(const SymbolicState& s, int k);

// Evaluates every bit under 64 parallel assignments.
std::array<std::array<uint64_t, 64>, 5> evaluate_state_lanes(
    const SymbolicState& s, const LaneAssignment& a);

}  // namespace anf
