// Parameter tables for the 5/6-round key-recovery attacks.  The tables are
// data: per-t templates of cube placements and pinned nonce bits, given as
// offsets that get rotated by t when a cube is instantiated.

#pragma once

#include <string>

#include "cube/spec.hpp"

namespace attack {

struct TemplatePlacement {
  int var;
  int word;
  int offset;
};

struct TemplateFixed {
  int word;
  int offset;
  int value;
};

struct ParamSet {
  int id = 0;  // 1..5
  std::vector<TemplatePlacement> cube;
  std::vector<TemplateFixed> fixed;
};

struct AttackParams {
  int rounds = 5;
  int dimension = 16;
  std::array<ParamSet, 5> sets;

  const ParamSet& set(int id) const { return sets.at(size_t(id - 1)); }
};

// Embedded copies of data/attack5.json and data/attack6.json.
const std::string& embedded_params_json(int rounds);

AttackParams params_from_json(const std::string& text);
AttackParams load_params(int rounds);

// Instantiates set `set_id` at rotation t.
cube::CubeSpec make_parameter_cube(const AttackParams& params, int set_id, int t,
                                   ascon::Flavor flavor,
                                   cube::FreeBitPolicy policy = cube::FreeBitPolicy::Zero,
                                   uint64_t seed = 0);

}  // namespace attack
