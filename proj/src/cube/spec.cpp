#include "cube/spec.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace cube {

using nlohmann::json;

std::optional<Violation> validate_spec(const CubeSpec& spec) {
  if (spec.dimension < 0 || spec.dimension > 65)
    return Violation{"dimension out of range: " + std::to_string(spec.dimension)};
  if (spec.rounds < 1 || spec.rounds > 12)
    return Violation{"rounds out of range: " + std::to_string(spec.rounds)};

  std::set<std::pair<int, int>> used;  // (word, bit)
  std::map<int, std::vector<int>> var_words;
  for (const auto& p : spec.placements) {
    if (p.word != 3 && p.word != 4)
      return Violation{"placement word must be 3 or 4"};
    if (p.bit < 0 || p.bit > 63) return Violation{"placement bit out of range"};
    if (p.var < 0 || p.var >= spec.dimension)
      return Violation{"placement var v" + std::to_string(p.var) +
                       " outside 0.." + std::to_string(spec.dimension - 1)};
    if (!used.insert({p.word, p.bit}).second)
      return Violation{"position reused: word " + std::to_string(p.word) +
                       " bit " + std::to_string(p.bit)};
    var_words[p.var].push_back(p.word);
  }
  for (const auto& f : spec.fixed_bits) {
    if (f.word != 3 && f.word != 4) return Violation{"fixed word must be 3 or 4"};
    if (f.bit < 0 || f.bit > 63) return Violation{"fixed bit out of range"};
    if (f.value != 0 && f.value != 1) return Violation{"fixed value must be 0 or 1"};
    if (!used.insert({f.word, f.bit}).second)
      return Violation{"position reused: word " + std::to_string(f.word) +
                       " bit " + std::to_string(f.bit)};
  }
  for (int v = 0; v < spec.dimension; ++v) {
    auto it = var_words.find(v);
    if (it == var_words.end())
      return Violation{"cube variable v" + std::to_string(v) + " never placed"};
    const auto& words = it->second;
    if (words.size() > 2)
      return Violation{"cube variable v" + std::to_string(v) +
                       " placed more than twice"};
    if (words.size() == 2 && words[0] == words[1])
      return Violation{"cube variable v" + std::to_string(v) +
                       " tied twice within one word"};
  }
  return std::nullopt;
}

std::string to_json(const CubeSpec& spec) {
  json j;
  j["flavor"] = spec.flavor == ascon::Flavor::Ascon128 ? "128" : "128a";
  j["rounds"] = spec.rounds;
  j["dimension"] = spec.dimension;
  j["placements"] = json::array();
  for (const auto& p : spec.placements)
    j["placements"].push_back({{"var", p.var}, {"word", p.word}, {"bit", p.bit}});
  j["fixed"] = json::array();
  for (const auto& f : spec.fixed_bits)
    j["fixed"].push_back({{"word", f.word}, {"bit", f.bit}, {"value", f.value}});
  j["free_policy"] = spec.free_policy == FreeBitPolicy::Zero ? "zero" : "seeded_random";
  j["seed"] = spec.seed;
  return j.dump(2);
}

CubeSpec spec_from_json(const std::string& text) {
  const json j = json::parse(text);
  CubeSpec spec;
  const std::string flavor = j.at("flavor").get<std::string>();
  if (flavor == "128")
    spec.flavor = ascon::Flavor::Ascon128;
  else if (flavor == "128a")
    spec.flavor = ascon::Flavor::Ascon128a;
  else
    throw std::invalid_argument("unknown flavor: " + flavor);
  spec.rounds = j.at("rounds").get<int>();
  spec.dimension = j.at("dimension").get<int>();
  for (const auto& p : j.at("placements"))
    spec.placements.push_back(
        {p.at("var").get<int>(), p.at("word").get<int>(), p.at("bit").get<int>()});
  for (const auto& f : j.value("fixed", json::array()))
    spec.fixed_bits.push_back(
        {f.at("word").get<int>(), f.at("bit").get<int>(), f.at("value").get<int>()});
  const std::string policy = j.value("free_policy", "zero");
  spec.free_policy =
      policy == "seeded_random" ? FreeBitPolicy::SeededRandom : FreeBitPolicy::Zero;
  spec.seed = j.value("seed", uint64_t(0));
  return spec;
}

}  // namespace cube
