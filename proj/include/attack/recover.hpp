// The 5/6-round conditional-cube tester and the exhaustive completion of the
// remaining key bits.

#pragma once

#include <optional>
#include <vector>

#include "attack/oracle.hpp"
#include "attack/params.hpp"

namespace attack {

struct RecoveredKeyInfo {
  // Row 0: k0(t).  Row 1: k0(t)+k1(t).  -1 = unknown.
  std::array<std::array<int8_t, 64>, 2> bits{};
  // Which t values were attempted; untried positions count into remain().
  std::array<bool, 64> tried{};

  RecoveredKeyInfo() {
    bits[0].fill(-1);
    bits[1].fill(-1);
  }
  bool known(int row, int t) const { return bits[size_t(row)][size_t(t)] >= 0; }
  int remain() const {
    int n = 0;
    for (int r = 0; r < 2; ++r)
      for (int t = 0; t < 64; ++t) n += int(!known(r, t));
    return n;
  }
};

struct PerTRecord {
  int t = 0;
  int sums_tried = 0;
  std::optional<int> k0;
  std::optional<int> k0_plus_k1;
};

struct RecoverOptions {
  std::vector<int> t_values;  // empty = all 64
  cube::FreeBitPolicy policy = cube::FreeBitPolicy::Zero;
  uint64_t seed = 0;
  std::vector<PerTRecord>* trace = nullptr;
};

// Runs the lazy five-sum tester at every requested t.  A nonzero cube sum is
// proof: flagged bits are never wrong.  The value recorded from sets 3/5
// inverts at t in 56..59 (round-constant byte) and set 4 replaces set 5 at
// the t where the IV bit is 1.
RecoveredKeyInfo recover_bits(InitOracle& oracle, const AttackParams& params,
                              const RecoverOptions& opt = {});

// Enumerates the 2^remain candidates consistent with `info` and returns the
// unique key matching the oracle on two fresh nonces.  Throws
// std::runtime_error("no candidate matched") when info is inconsistent with
// the oracle, and std::invalid_argument when remain exceeds the budget.
ascon::MasterKey exhaustive_completion(const RecoveredKeyInfo& info, InitOracle& oracle,
                                       uint64_t nonce_seed = 0x5eed,
                                       int budget_bits = 30);

// Worst-case oracle-call count of the full tester: t_count * 2 * 2 * 2^d.
uint64_t attack_cost(const AttackParams& params, int t_count = 64);

}  // namespace attack
