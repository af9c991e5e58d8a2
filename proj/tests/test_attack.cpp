#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "attack/recover.hpp"

using namespace attack;
using ascon::Flavor;
using ascon::MasterKey;

TEST_CASE("parameter tables: transcription checksums") {
  const AttackParams p5 = load_params(5);
  CHECK(p5.rounds == 5);
  CHECK(p5.dimension == 16);
  const AttackParams p6 = load_params(6);
  CHECK(p6.rounds == 6);
  CHECK(p6.dimension == 32);

  for (const AttackParams* p : {&p5, &p6}) {
    for (const auto& set : p->sets) {
      std::map<int, int> placements_per_var;
      std::set<std::pair<int, int>> positions;
      for (const auto& c : set.cube) {
        ++placements_per_var[c.var];
        CHECK(positions.insert({c.word, c.offset}).second);
      }
      CHECK(int(placements_per_var.size()) == p->dimension);
      for (const auto& [var, n] : placements_per_var) {
        CHECK(var >= 0);
        CHECK(var < p->dimension);
        CHECK(n <= 2);
      }
      for (const auto& f : set.fixed) CHECK(positions.insert({f.word, f.offset}).second);
    }
  }

  // per-set fixed-bit counts as transcribed
  std::vector<size_t> fixed5, fixed6, tied5, tied6;
  auto tied_count = [](const ParamSet& s, int dim) {
    std::map<int, int> n;
    for (const auto& c : s.cube) ++n[c.var];
    int tied = 0;
    for (int v = 0; v < dim; ++v) tied += int(n[v] == 2);
    return size_t(tied);
  };
  for (const auto& s : p5.sets) {
    fixed5.push_back(s.fixed.size());
    tied5.push_back(tied_count(s, 16));
  }
  for (const auto& s : p6.sets) {
    fixed6.push_back(s.fixed.size());
    tied6.push_back(tied_count(s, 32));
  }
  CHECK(fixed5 == std::vector<size_t>{16, 16, 15, 0, 0});
  CHECK(tied5 == std::vector<size_t>{0, 0, 1, 0, 0});
  CHECK(fixed6 == std::vector<size_t>{0, 0, 0, 1, 5});
  CHECK(tied6 == std::vector<size_t>{3, 3, 1, 0, 5});

  // embedded copy equals the file under data/ (loader parses both)
  CHECK_THROWS_AS(embedded_params_json(7), std::invalid_argument);
}

TEST_CASE("rotation arithmetic wraps mod 64") {
  const AttackParams p5 = load_params(5);
  const auto spec = make_parameter_cube(p5, 1, 40, Flavor::Ascon128);
  // offset 50 + t 40 = 90 -> 26
  bool found = false;
  for (const auto& pl : spec.placements) found |= (pl.word == 4 && pl.bit == 26);
  CHECK(found);
}

TEST_CASE("attack cost formula") {
  const AttackParams p5 = load_params(5);
  const AttackParams p6 = load_params(6);
  CHECK(attack_cost(p5) == (1ull << 24));
  CHECK(attack_cost(p6) == (1ull << 40));
  CHECK(attack_cost(p6, 4) == 4ull * 2 * 2 * (1ull << 32));
}

TEST_CASE("5-round recovery: flagged bits are always right, remain < 14") {
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(0xA5A5);
  for (int trial = 0; trial < 3; ++trial) {
    const MasterKey key{rng(), rng()};
    KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
    RecoverOptions ropt;
    ropt.policy = cube::FreeBitPolicy::SeededRandom;
    ropt.seed = rng();
    const RecoveredKeyInfo info = recover_bits(oracle, params, ropt);
    for (int t = 0; t < 64; ++t) {
      if (info.known(0, t))
        CHECK(info.bits[0][size_t(t)] == ascon::get_bit(key.k0, t));
      if (info.known(1, t))
        CHECK(info.bits[1][size_t(t)] ==
              (ascon::get_bit(key.k0, t) ^ ascon::get_bit(key.k1, t)));
    }
    CHECK(info.remain() < 14);
    CHECK(oracle.calls() <= attack_cost(params));

    const MasterKey recovered = exhaustive_completion(info, oracle, rng());
    CHECK(recovered == key);
  }
}

TEST_CASE("soundness sweep: 100 random keys, zero flagged-bit errors") {
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(0x50D);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const MasterKey key{rng(), rng()};
    KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
    RecoverOptions opt;
    opt.policy = trial % 2 ? cube::FreeBitPolicy::SeededRandom
                           : cube::FreeBitPolicy::Zero;
    opt.seed = rng();
    const RecoveredKeyInfo info = recover_bits(oracle, params, opt);
    for (int t = 0; t < 64; ++t) {
      if (info.known(0, t)) {
        ++checked;
        REQUIRE(info.bits[0][size_t(t)] == ascon::get_bit(key.k0, t));
      }
      if (info.known(1, t)) {
        ++checked;
        REQUIRE(info.bits[1][size_t(t)] ==
                (ascon::get_bit(key.k0, t) ^ ascon::get_bit(key.k1, t)));
      }
    }
  }
  CHECK(checked > 100 * 100);  // the tester flags most of the 128 positions
}

TEST_CASE("set (1) nonzero sum pins k0(t) = 1") {
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(5);
  MasterKey key{rng(), rng()};
  key.k0 = ascon::set_bit(key.k0, 5, 1);
  KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
  RecoverOptions opt;
  opt.t_values = {5};
  const RecoveredKeyInfo info = recover_bits(oracle, params, opt);
  REQUIRE(info.known(0, 5));
  CHECK(info.bits[0][5] == 1);
}

TEST_CASE("the t in 56..59 inversion is exercised") {
  // For a key with k0(t)+k1(t) = 0 at t = 57, the set (3) cube sum is
  // (generically) nonzero because the round constant flips the divisor, and
  // the tester must record 0.
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(57);
  int looked_at = 0;
  for (int trial = 0; trial < 8; ++trial) {
    MasterKey key{rng(), rng()};
    key.k1 = ascon::set_bit(key.k1, 57, ascon::get_bit(key.k0, 57));  // b(57)=0
    KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
    std::vector<PerTRecord> trace;
    RecoverOptions opt;
    opt.t_values = {57};
    opt.trace = &trace;
    const RecoveredKeyInfo info = recover_bits(oracle, params, opt);
    if (info.known(1, 57)) {
      CHECK(info.bits[1][57] == 0);
      // must have come from set (3): 2 sums for k0 at most, then C3 nonzero
      ++looked_at;
    }
  }
  CHECK(looked_at > 0);
}

TEST_CASE("exhaustive completion handles remain = 0 and corrupted info") {
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(99);
  const MasterKey key{rng(), rng()};
  KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
  RecoveredKeyInfo info;
  for (int t = 0; t < 64; ++t) {
    info.bits[0][size_t(t)] = int8_t(ascon::get_bit(key.k0, t));
    info.bits[1][size_t(t)] =
        int8_t(ascon::get_bit(key.k0, t) ^ ascon::get_bit(key.k1, t));
  }
  CHECK(info.remain() == 0);
  CHECK(exhaustive_completion(info, oracle) == key);

  // flip one known bit: no candidate can match
  info.bits[0][7] ^= 1;
  CHECK_THROWS_WITH_AS(exhaustive_completion(info, oracle), "no candidate matched",
                       std::runtime_error);

  // budget guard
  RecoveredKeyInfo empty;
  CHECK_THROWS_AS(exhaustive_completion(empty, oracle), std::invalid_argument);
}

TEST_CASE("remain = 14 completes within 2^14 candidates") {
  const AttackParams params = load_params(5);
  std::mt19937_64 rng(1414);
  const MasterKey key{rng(), rng()};
  KeyedInitOracle oracle(key, 5, Flavor::Ascon128, 2);
  RecoveredKeyInfo info;
  for (int t = 0; t < 64; ++t) {
    if (t % 9 != 0) info.bits[0][size_t(t)] = int8_t(ascon::get_bit(key.k0, t));
    if (t % 11 != 1)
      info.bits[1][size_t(t)] =
          int8_t(ascon::get_bit(key.k0, t) ^ ascon::get_bit(key.k1, t));
  }
  REQUIRE(info.remain() == 14);
  const uint64_t before = oracle.calls();
  CHECK(exhaustive_completion(info, oracle) == key);
  // two probe queries plus at most 2^14 candidate checks against cached outputs
  CHECK(oracle.calls() - before <= 2);
}

TEST_CASE("recovery is deterministic for a fixed oracle and options") {
  const AttackParams params = load_params(5);
  const MasterKey key{0x5555aaaa5555aaaaull, 0x123456789abcdef0ull};
  RecoverOptions opt;
  opt.t_values = {3, 57};
  KeyedInitOracle o1(key, 5, Flavor::Ascon128, 1);
  KeyedInitOracle o2(key, 5, Flavor::Ascon128, 2);
  const auto a = recover_bits(o1, params, opt);
  const auto b = recover_bits(o2, params, opt);
  CHECK(a.bits == b.bits);
}
