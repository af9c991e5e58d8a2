// Cube specification: where the cube variables live in the two nonce words,
// which nonce bits are pinned, and how the remaining free bits are filled.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ascon/state.hpp"

namespace cube {

// Cubes above this dimension are plan-only: they describe an attack step
// whose 2^d oracle calls are out of desk scale and are never executed.
constexpr int kMaxExecutableDimension = 34;

struct Placement {
  int var = 0;   // 0..dimension-1
  int word = 3;  // 3 or 4
  int bit = 0;   // 0..63, MSB-first
  friend bool operator<=>(const Placement&, const Placement&) = default;
};

struct FixedBit {
  int word = 3;
  int bit = 0;
  int value = 0;
  friend bool operator<=>(const FixedBit&, const FixedBit&) = default;
};

enum class FreeBitPolicy { Zero, SeededRandom };

struct CubeSpec {
  ascon::Flavor flavor = ascon::Flavor::Ascon128;
  int rounds = 5;
  int dimension = 0;
  std::vector<Placement> placements;
  std::vector<FixedBit> fixed_bits;
  FreeBitPolicy free_policy = FreeBitPolicy::Zero;
  uint64_t seed = 0;

  bool plan_only() const { return dimension > kMaxExecutableDimension; }
};

struct Violation {
  std::string message;
};

// Checks every CubeSpec invariant; returns the first violation found, or
// nullopt when the spec is well formed (plan-only specs are well formed).
std::optional<Violation> validate_spec(const CubeSpec& spec);

// Structured-text (JSON) round trip for the on-disk cube format.
std::string to_json(const CubeSpec& spec);
CubeSpec spec_from_json(const std::string& text);

}  // namespace cube
