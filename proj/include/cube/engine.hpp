// Cube-sum evaluation: XOR of the initialization oracle's rate words over all
// 2^d assignments of the cube variables.

#pragma once

#include <cstdint>

#include "ascon/permutation.hpp"
#include "cube/spec.hpp"

namespace cube {

struct CubeSumResult {
  ascon::RateWords sums;
  uint64_t evaluations = 0;

  bool nonzero() const { return sums.any_nonzero(); }
};

// Serial reference path.  Throws std::invalid_argument on invalid or
// plan-only specs.
CubeSumResult cube_sum(const CubeSpec& spec, const ascon::MasterKey& key);

// Identical result for any worker count: the index space is partitioned into
// disjoint contiguous ranges and the per-worker accumulators are XORed.
CubeSumResult cube_sum_parallel(const CubeSpec& spec, const ascon::MasterKey& key,
                                int workers);

// The base nonce a spec induces before any cube variable is raised: fixed
// bits applied, free bits per policy.  Exposed for tests and for the attack
// layer's single-query verification.
ascon::NonceWords base_nonce(const CubeSpec& spec);

std::string result_to_json(const CubeSumResult& r);

}  // namespace cube
