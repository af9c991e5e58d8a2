#include "attack/recover.hpp"

#include <random>
#include <set>

namespace attack {

namespace {

const std::set<int> kConstantByte{56, 57, 58, 59};

// Set (4) exists for the t where the IV bit is 1 ({0,9,20,21,29,30} for
// Ascon-128); derived from the flavor so the tester carries over to 128a.
bool iv_bit_one(ascon::Flavor flavor, int t) {
  return ascon::get_bit(ascon::CipherParams::make(flavor).iv, t) == 1;
}

}  // namespace

RecoveredKeyInfo recover_bits(InitOracle& oracle, const AttackParams& params,
                              const RecoverOptions& opt) {
  std::vector<int> ts = opt.t_values;
  if (ts.empty())
    for (int t = 0; t < 64; ++t) ts.push_back(t);

  RecoveredKeyInfo info;
  const ascon::Flavor flavor = oracle.flavor();

  for (int t : ts) {
    if (t < 0 || t > 63) throw std::invalid_argument("t out of range");
    info.tried[size_t(t)] = true;
    PerTRecord rec;
    rec.t = t;
    auto sum_nonzero = [&](int set_id) {
      ++rec.sums_tried;
      return oracle
          .cube_sum(make_parameter_cube(params, set_id, t, flavor, opt.policy, opt.seed))
          .nonzero();
    };
    const bool invert = kConstantByte.count(t) > 0;

    if (sum_nonzero(1)) {
      info.bits[0][size_t(t)] = 1;
    } else if (sum_nonzero(2)) {
      info.bits[0][size_t(t)] = 0;
    }

    if (sum_nonzero(3)) {
      info.bits[1][size_t(t)] = invert ? 0 : 1;
    } else if (iv_bit_one(flavor, t)) {
      if (sum_nonzero(4)) info.bits[1][size_t(t)] = 0;
    } else {
      if (sum_nonzero(5)) info.bits[1][size_t(t)] = invert ? 1 : 0;
    }

    if (info.known(0, t)) rec.k0 = info.bits[0][size_t(t)];
    if (info.known(1, t)) rec.k0_plus_k1 = info.bits[1][size_t(t)];
    if (opt.trace) opt.trace->push_back(rec);
  }
  return info;
}

ascon::MasterKey exhaustive_completion(const RecoveredKeyInfo& info, InitOracle& oracle,
                                       uint64_t nonce_seed, int budget_bits) {
  const int remain = info.remain();
  if (remain > budget_bits)
    throw std::invalid_argument("remain=" + std::to_string(remain) +
                                " exceeds the exhaustive-search budget of 2^" +
                                std::to_string(budget_bits));

  // Free slots: unknown k0 bits and unknown xor bits each contribute one
  // candidate bit; a known xor bit determines k1 from k0.
  std::vector<std::pair<int, int>> free_slots;  // (row, t)
  for (int t = 0; t < 64; ++t) {
    if (!info.known(0, t)) free_slots.push_back({0, t});
    if (!info.known(1, t)) free_slots.push_back({1, t});
  }

  std::mt19937_64 rng(nonce_seed);
  std::array<ascon::NonceWords, 2> nonces;
  std::array<ascon::RateWords, 2> expected;
  for (int i = 0; i < 2; ++i) {
    nonces[size_t(i)] = {rng(), rng()};
    expected[size_t(i)] = oracle.query(nonces[size_t(i)]);
  }
  const ascon::CipherParams params = ascon::CipherParams::make(oracle.flavor());

  const uint64_t total = 1ull << free_slots.size();
  for (uint64_t guess = 0; guess < total; ++guess) {
    ascon::MasterKey candidate{0, 0};
    for (int t = 0; t < 64; ++t)
      if (info.known(0, t))
        candidate.k0 = ascon::set_bit(candidate.k0, t, info.bits[0][size_t(t)]);
    for (size_t s = 0; s < free_slots.size(); ++s) {
      const auto [row, t] = free_slots[s];
      const int v = int((guess >> s) & 1);
      if (row == 0) candidate.k0 = ascon::set_bit(candidate.k0, t, v);
    }
    for (int t = 0; t < 64; ++t) {
      int x;
      if (info.known(1, t)) {
        x = info.bits[1][size_t(t)];
      } else {
        // find this slot's guessed bit
        x = 0;
        for (size_t s = 0; s < free_slots.size(); ++s)
          if (free_slots[s] == std::pair<int, int>{1, t}) x = int((guess >> s) & 1);
      }
      candidate.k1 =
          ascon::set_bit(candidate.k1, t, x ^ ascon::get_bit(candidate.k0, t));
    }

    bool ok = true;
    for (int i = 0; i < 2 && ok; ++i)
      ok = ascon::init_oracle(candidate, nonces[size_t(i)], oracle.rounds(), params) ==
           expected[size_t(i)];
    if (ok) return candidate;
  }
  throw std::runtime_error("no candidate matched");
}

uint64_t attack_cost(const AttackParams& params, int t_count) {
  return uint64_t(t_count) * 2 * 2 * (1ull << params.dimension);
}

}  // namespace attack
