// The 7-round attack plan: 65-dimension cube families, the key-subset
// decomposition over b(j) = k0(j)+k1(j), the chain filtration counting, and
// the complexity ledger.  All plan-only: nothing here executes a 2^65 cube.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "anf/conditions.hpp"
#include "cube/spec.hpp"

namespace plan {

// Number of length-n binary strings with no two adjacent zeros, over a
// linear (non-circular) chain.  Equals Fibonacci(n+2) with F(1)=F(2)=1.
uint64_t filtration_count(int n);

struct KeySubset {
  enum class Kind { U, Uprime };
  Kind kind = Kind::U;
  int i = 0;
  int freed_offset = 0;  // 0 for CASE 1; 1 or 6 when the IV bit frees a slot
  std::set<int> aux_offsets;
  std::vector<int> control_menu;  // offsets whose rhs a control slot flips
  anf::ConditionSystem base_system;      // control mask empty
  std::vector<anf::Condition> forced;    // mask-independent conditions
  int tests = 0;                         // 64 or 128 cube testers
  double test_cost_log2 = 0;             // 71 or 72

  // Condition system for one control-mask choice.
  anf::ConditionSystem system_for_mask(const std::set<int>& mask) const;
};

struct LedgerTerm {
  std::string name;
  double log2 = 0;  // count-type terms store the plain count instead
  std::string note;
  bool is_count = false;
};

struct ComplexityReport {
  ascon::Flavor flavor = ascon::Flavor::Ascon128;
  std::vector<LedgerTerm> terms;
  double cube_testing_log2 = 0;
  double filter_checks_log2 = 0;
  double remaining_subset_log2 = 0;          // headline accounting
  double remaining_subset_derived_log2 = 0;  // from the derived chains
  double worst_case_total_log2 = 0;
  double weak_key_total_log2 = 0;        // addends rounded up to powers of two
  double weak_key_total_exact_log2 = 0;  // log2(2^76 + 11*2^72) for Ascon-128
  std::vector<std::string> notes;

  const LedgerTerm* find(const std::string& name) const;
};

struct SubsetPlan {
  ascon::Flavor flavor = ascon::Flavor::Ascon128;
  std::vector<KeySubset> subsets;  // U' subsets first, then U
  std::vector<anf::Condition> ki0;            // derived one-bit conditions
  std::vector<std::vector<int>> ki_chains;    // derived index chains
  std::vector<int> published_ki0;             // as printed
  std::vector<std::vector<int>> published_chains;
  bool matches_published = false;  // derived ki0/chains equal the printed ones
  ComplexityReport ledger;
  std::vector<std::string> notes;

  int count(KeySubset::Kind k) const;
  const KeySubset* find(KeySubset::Kind k, int i) const;
};

// The 65-dimension cube for position i with the given control slots raised.
// case_kind must match the IV bits at i+1/i+6 (CASE 2 needs one of them set,
// CASE 1 needs both clear); the result is always plan-only.
cube::CubeSpec materialize_cube(int i, const std::set<int>& control_mask,
                                int case_kind, ascon::Flavor flavor);

// Enumerates every subset with conditions taken from the symbolic
// derivations, cross-checks the control-flip structure (hard error on
// mismatch), derives the KI chains, and fills the ledger.
SubsetPlan build_plan(ascon::Flavor flavor);

ComplexityReport complexity_ledger(ascon::Flavor flavor);

std::string plan_to_json(const SubsetPlan& plan);

struct SubsetIdentification {
  std::set<int> control_mask;
  std::vector<anf::Condition> recovered;  // the 8 b-bit values
};

// Stand-in for the 2^65-cost cube testers: a cube "reads zero" exactly when
// the derived conditions hold for the true key.  Returns the unique matching
// control mask, or nullopt when the key is not in the subset.
std::optional<SubsetIdentification> simulate_subset_identification(
    const ascon::MasterKey& key, const KeySubset& subset);

}  // namespace plan
