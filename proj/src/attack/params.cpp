#include "attack/params.hpp"

#include <json.hpp>

namespace attack {

using nlohmann::json;

AttackParams params_from_json(const std::string& text) {
  const json j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  AttackParams p;
  p.rounds = j.at("rounds").get<int>();
  p.dimension = j.at("dimension").get<int>();
  const auto& sets = j.at("sets");
  if (sets.size() != 5) throw std::invalid_argument("expected 5 parameter sets");
  for (size_t s = 0; s < 5; ++s) {
    ParamSet& ps = p.sets[s];
    ps.id = sets[s].at("id").get<int>();
    if (ps.id != int(s) + 1) throw std::invalid_argument("parameter sets out of order");
    for (const auto& c : sets[s].at("cube"))
      ps.cube.push_back({c.at("var").get<int>(), c.at("word").get<int>(),
                         c.at("offset").get<int>()});
    for (const auto& f : sets[s].at("fixed"))
      ps.fixed.push_back({f.at("word").get<int>(), f.at("offset").get<int>(),
                          f.at("value").get<int>()});
  }
  return p;
}

AttackParams load_params(int rounds) {
  return params_from_json(embedded_params_json(rounds));
}

cube::CubeSpec make_parameter_cube(const AttackParams& params, int set_id, int t,
                                   ascon::Flavor flavor, cube::FreeBitPolicy policy,
                                   uint64_t seed) {
  const ParamSet& set = params.set(set_id);
  cube::CubeSpec spec;
  spec.flavor = flavor;
  spec.rounds = params.rounds;
  spec.dimension = params.dimension;
  spec.free_policy = policy;
  spec.seed = seed;
  for (const auto& c : set.cube)
    spec.placements.push_back({c.var, c.word, ascon::mod64(c.offset + t)});
  for (const auto& f : set.fixed)
    spec.fixed_bits.push_back({f.word, ascon::mod64(f.offset + t), f.value});
  if (auto v = cube::validate_spec(spec))
    throw std::logic_error("parameter table produced an invalid cube: " + v->message);
  return spec;
}

}  // namespace attack
