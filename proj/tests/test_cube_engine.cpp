#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>

#include "attack/params.hpp"
#include "cube/engine.hpp"
#include "support/scalar_oracle.hpp"

using namespace cube;
using ascon::Flavor;
using ascon::MasterKey;

namespace {

// Small random spec over distinct positions; ~1/4 of the variables tied.
CubeSpec random_spec(std::mt19937_64& rng, int dim, int rounds) {
  CubeSpec spec;
  spec.flavor = Flavor::Ascon128;
  spec.rounds = rounds;
  spec.dimension = dim;
  std::array<int, 64> perm;
  for (int i = 0; i < 64; ++i) perm[size_t(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  int next = 0;
  for (int v = 0; v < dim; ++v) {
    const int bit = perm[size_t(next++)];
    if (rng() % 4 == 0) {
      spec.placements.push_back({v, 3, bit});
      spec.placements.push_back({v, 4, bit});
    } else {
      spec.placements.push_back({v, rng() % 2 ? 3 : 4, bit});
    }
  }
  // pin a couple of leftover positions
  for (int f = 0; f < 2; ++f) {
    const int bit = perm[size_t(next++)];
    spec.fixed_bits.push_back({3, bit, int(rng() % 2)});
  }
  return spec;
}

// Reference cube sum: enumerate assignments in plain counter order.
CubeSumResult naive_cube_sum(const CubeSpec& spec, const MasterKey& key) {
  const auto params = ascon::CipherParams::make(spec.flavor);
  const ascon::NonceWords base = base_nonce(spec);
  CubeSumResult r;
  r.sums.count = params.rate_words;
  for (uint64_t a = 0; a < (1ull << spec.dimension); ++a) {
    ascon::NonceWords n = base;
    for (const auto& p : spec.placements)
      if ((a >> p.var) & 1) (p.word == 3 ? n.n3 : n.n4) ^= ascon::word_bit(p.bit);
    const auto out = testsupport::scalar_init_oracle(key, n, spec.rounds, params);
    r.sums.w[0] ^= out.w[0];
    if (params.rate_words > 1) r.sums.w[1] ^= out.w[1];
    ++r.evaluations;
  }
  return r;
}

}  // namespace

TEST_CASE("validate_spec reports violations") {
  CubeSpec spec;
  spec.dimension = 2;
  spec.rounds = 5;
  spec.placements = {{0, 3, 7}, {1, 3, 7}};
  auto v = validate_spec(spec);
  REQUIRE(v.has_value());
  CHECK(v->message.find("position reused") != std::string::npos);

  spec.placements = {{0, 3, 7}};
  v = validate_spec(spec);
  REQUIRE(v.has_value());
  CHECK(v->message.find("v1") != std::string::npos);  // never placed

  // tied twice within one word is rejected
  spec.dimension = 1;
  spec.placements = {{0, 3, 7}, {0, 3, 9}};
  CHECK(validate_spec(spec).has_value());
  // tied across words is fine
  spec.placements = {{0, 3, 7}, {0, 4, 7}};
  CHECK(!validate_spec(spec).has_value());
}

TEST_CASE("the 5-round set (1) template at t=0 validates") {
  const auto params = attack::load_params(5);
  const CubeSpec spec = attack::make_parameter_cube(params, 1, 0, Flavor::Ascon128);
  CHECK(!validate_spec(spec).has_value());
  CHECK(spec.dimension == 16);
}

TEST_CASE("a 65-dimension spec is well formed but plan-only") {
  CubeSpec spec;
  spec.flavor = Flavor::Ascon128;
  spec.rounds = 7;
  spec.dimension = 65;
  for (int j = 0; j < 64; ++j) spec.placements.push_back({j, 3, j});
  spec.placements.push_back({64, 4, 0});
  CHECK(!validate_spec(spec).has_value());
  CHECK(spec.plan_only());
  CHECK_THROWS_AS(cube_sum(spec, MasterKey{1, 2}), std::invalid_argument);
}

TEST_CASE("dimension 0 equals a single oracle call") {
  CubeSpec spec;
  spec.rounds = 3;
  spec.dimension = 0;
  spec.fixed_bits = {{3, 0, 1}, {4, 63, 1}};
  const MasterKey key{123, 456};
  const auto r = cube_sum(spec, key);
  CHECK(r.evaluations == 1);
  const auto want = ascon::init_oracle(key, base_nonce(spec), 3,
                                       ascon::CipherParams::make(spec.flavor));
  CHECK(r.sums == want);
}

TEST_CASE("cube sum equals the naive enumeration") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    CubeSpec spec = random_spec(rng, 2 + int(rng() % 7), 1 + int(rng() % 4));
    if (trial % 3 == 0) {
      spec.free_policy = FreeBitPolicy::SeededRandom;
      spec.seed = rng();
    }
    const MasterKey key{rng(), rng()};
    const auto got = cube_sum(spec, key);
    const auto want = naive_cube_sum(spec, key);
    CHECK(got.sums == want.sums);
    CHECK(got.evaluations == want.evaluations);
  }
}

TEST_CASE("derivative identity: sum(d) = sum(d-1 | v=0) ^ sum(d-1 | v=1)") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    CubeSpec spec = random_spec(rng, 3 + int(rng() % 6), 1 + int(rng() % 5));
    const MasterKey key{rng(), rng()};
    const int last = spec.dimension - 1;
    CubeSpec pinned = spec;
    pinned.dimension = last;
    std::vector<Placement> kept;
    for (const auto& p : pinned.placements) {
      if (p.var == last)
        pinned.fixed_bits.push_back({p.word, p.bit, 0});
      else
        kept.push_back(p);
    }
    pinned.placements = kept;
    auto pinned1 = pinned;
    // v_last = 0
    const auto s0 = cube_sum(pinned, key);
    // v_last = 1: flip the fixed values that came from the last variable
    size_t base_fixed = spec.fixed_bits.size();
    for (size_t k = base_fixed; k < pinned1.fixed_bits.size(); ++k)
      pinned1.fixed_bits[k].value = 1;
    const auto s1 = cube_sum(pinned1, key);
    const auto full = cube_sum(spec, key);
    CHECK(full.sums.w[0] == (s0.sums.w[0] ^ s1.sums.w[0]));
  }
}

TEST_CASE("parallel result is identical for any worker count") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 10; ++trial) {
    const CubeSpec spec = random_spec(rng, 10 + int(rng() % 5), 4);
    const MasterKey key{rng(), rng()};
    const auto serial = cube_sum(spec, key);
    for (int workers : {2, 3, 8}) {
      const auto par = cube_sum_parallel(spec, key, workers);
      CHECK(par.sums == serial.sums);
      CHECK(par.evaluations == serial.evaluations);
    }
  }
}

TEST_CASE("17-dimension cube: parallel equals serial, counts are exact") {
  std::mt19937_64 rng(77);
  CubeSpec spec = random_spec(rng, 17, 5);
  const MasterKey key{rng(), rng()};
  const auto serial = cube_sum(spec, key);
  const auto par = cube_sum_parallel(spec, key, 8);
  CHECK(serial.sums == par.sums);
  CHECK(par.evaluations == (1ull << 17));
}

TEST_CASE("5-round set (1) at t=0 with k0(0)=0 sums to zero on all bits") {
  const auto params = attack::load_params(5);
  const CubeSpec spec = attack::make_parameter_cube(params, 1, 0, Flavor::Ascon128);
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 5; ++trial) {
    MasterKey key{rng(), rng()};
    key.k0 = ascon::set_bit(key.k0, 0, 0);
    const auto r = cube_sum_parallel(spec, key, 2);
    CHECK(r.sums.w[0] == 0);
  }
}

TEST_CASE("cube spec JSON round trip") {
  std::mt19937_64 rng(4242);
  const CubeSpec spec = random_spec(rng, 9, 6);
  const CubeSpec back = spec_from_json(to_json(spec));
  CHECK(back.dimension == spec.dimension);
  CHECK(back.rounds == spec.rounds);
  CHECK(back.placements == spec.placements);
  CHECK(back.fixed_bits == spec.fixed_bits);
  const MasterKey key{rng(), rng()};
  CHECK(cube_sum(spec, key).sums == cube_sum(back, key).sums);
}

TEST_CASE("throughput probe: 2^20 six-round evaluations" * doctest::skip(false)) {
  CubeSpec spec;
  spec.rounds = 6;
  spec.dimension = 20;
  for (int v = 0; v < 20; ++v) spec.placements.push_back({v, 3, v});
  const MasterKey key{0x1122334455667788ull, 0x99aabbccddeeff00ull};
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = cube_sum_parallel(spec, key, 2);
  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
  CHECK(r.evaluations == (1ull << 20));
  MESSAGE("6-round initializations per second: ", uint64_t(double(r.evaluations) / dt.count()));
}
