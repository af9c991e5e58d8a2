// Cubic-coefficient extraction for the 65-dimension cube layout and the key
// conditions that zero those coefficients.
//
// Layout: S0[3][j] = v_j for all j, S0[4][i] = v64, plus tied nonce bits
// S0[4][i+o] = v_{i+o} for auxiliary offsets (fixed per cube) and control
// offsets (tweakable).  After round 2's substitution layer the only cubic
// monomials in the cube variables are v_i*v64*v_j; their coefficients are
// affine in b(j) = k0(j)+k1(j) and vanishing them caps the cube degree at 2.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "anf/symbolic.hpp"

namespace anf {

// Offsets (relative to i) of the always-tied auxiliary slots in CASE 1.
// S0[4][i+60] pairs with the cubic term v_i*v64*v_{i+60}.
inline const std::set<int> kAuxOffsets{1, 6, 47, 48, 53, 54, 55, 60};

// Offsets eligible as control slots in CASE 1; CASE 2 frees 1 or 6 as well.
inline const std::set<int> kControlMenu{3, 4, 9, 25, 26, 31};

struct CubicRow {
  int sbox_offset;  // 0, 1 or 6: S-box index i+offset of round 2
  int term_offset;  // j = i + term_offset in the cubic term v_i*v64*v_j
  // Distinct nonzero coefficient polynomials across the five S-box outputs,
  // each with the output indexes it appears in.
  std::vector<std::pair<Polynomial, std::vector<int>>> coefficients;
};

struct CoefficientTable {
  int i = 0;
  ascon::Flavor flavor = ascon::Flavor::Ascon128;
  std::set<int> aux, control;
  std::vector<CubicRow> rows;  // sorted by (sbox_offset, term_offset)

  const CubicRow* find(int sbox_offset, int term_offset) const;
};

// Slot assignment of the 65-dimension layout with the given tied offsets.
std::pair<WordSlots, WordSlots> subset_cube_slots(int i, const std::set<int>& tied_offsets);

CoefficientTable extract_cubic_coefficients(int i, const std::set<int>& aux,
                                            const std::set<int>& control,
                                            ascon::Flavor flavor);

struct Condition {
  int index = 0;  // b(index) with b(j) = k0(j)+k1(j)
  int rhs = 0;
  friend auto operator<=>(const Condition&, const Condition&) = default;
};

struct ConditionSystem {
  std::vector<Condition> conditions;  // sorted by index
  bool satisfiable = true;
  std::vector<std::string> issues;  // rows that cannot be zeroed, conflicts

  std::optional<int> rhs_for(int index) const;
  bool satisfied_by(const ascon::MasterKey& key) const;
};

// The affine system over b(j) whose satisfaction zeroes every coefficient in
// the table.  Throws std::domain_error on a non-affine coefficient.
ConditionSystem derive_key_conditions(const CoefficientTable& table);

// Structured-text (JSON) export of a table and its condition system.
std::string table_to_json(const CoefficientTable& table);

// Substitutes the key, advances two rounds with only the cube variables
// symbolic, and returns the maximum cube-variable degree over all state bits.
int max_cube_degree(const ascon::MasterKey& key, int i, const std::set<int>& aux,
                    const std::set<int>& control, ascon::Flavor flavor,
                    int rounds = 2);

}  // namespace anf
