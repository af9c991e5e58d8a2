// Reference forms the symbolic derivations are checked against: the round-1
// state polynomials feeding the (i+1)-th S-box of round 2, the cubic-term
// coefficient tables for S-boxes i/i+1/i+6, and the affine key-condition
// systems.  Transcribed once, parameterized by i and flavor.
//
// Two systematic adjustments are applied to the transcriptions so they live
// in the same model as the engine:
//   * IV bits are folded to constants per flavor;
//   * the first-round constant 0xf0 is absorbed into the key word, i.e.
//     k1(j) is renamed to k1(j)+1 for j in 56..59.  The published equations
//     omit the constant addition; the published 5-round procedure handles
//     the same effect by inverting recovered bits at t in 56..59.

#pragma once

#include <set>

#include "anf/conditions.hpp"

namespace anf {

// k1(j) -> k1(j)+1 for j in 56..59.
Polynomial absorb_first_round_constant(const Polynomial& p);

struct ReferenceWord1Options {
  bool aux1 = false;     // S0[4][i+1] tied
  bool control4 = false;  // S0[4][i+4] tied
};

// S1[1][i+1]: the x1 input of round 2's (i+1)-th S-box.
Polynomial reference_s1_word1(int i, ascon::Flavor flavor, ReferenceWord1Options opt);

// S1[2][i+1]: the x2 input, carrying the quadratic v_i*v64.  The published
// form omits a constant 1 (three applications of y2 = ... + 1); pass
// verbatim=true to reproduce the printed polynomial instead of the exact one.
Polynomial reference_s1_word2(int i, ascon::Flavor flavor, bool aux1,
                              bool verbatim = false);

// S1[3][i+1]: the x3 input.  With all three ties the cube variables cancel.
Polynomial reference_s1_word3(int i, ascon::Flavor flavor, bool aux1, bool aux48,
                              bool aux55);

struct ReferenceCubicRow {
  int sbox_offset;
  int term_offset;
  std::vector<Polynomial> coefficients;  // distinct, nonzero after folding
};

// Expected rows for a given tie configuration.  `aux`/`control` use the same
// offset convention as extract_cubic_coefficients.  Note: the published
// no-aux table pairs the term v_i*v64*v_{i+61} with coefficient IV(i+60)+1;
// the derivation places the term at offset 60, which is what this returns.
std::vector<ReferenceCubicRow> reference_cubic_rows(int i, ascon::Flavor flavor,
                                                    const std::set<int>& aux,
                                                    const std::set<int>& control);

// Condition offsets o (relative to i) and the right-hand sides that zero the
// aux-table coefficients; control offsets flip their rhs to 0 before the
// round-constant adjustment.
ConditionSystem reference_condition_system(int i, const std::set<int>& control,
                                           bool case2_frees_1, bool case2_frees_6);

// One-bit key-condition indexes of the 12 published CASE 2 systems
// (j with b(j) = 0 published; the engine derives b(59) = 1 because of the
// round constant).  Index 25 appears in both families.
std::vector<int> published_case2_condition_indexes_ip1();  // {5,14,25,26,34,35}
std::vector<int> published_case2_condition_indexes_ip6();  // {59,4,15,16,24,25}

}  // namespace anf
