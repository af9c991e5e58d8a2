#include "cube/engine.hpp"

#include <bit>
#include <random>
#include <thread>
#include <vector>

#include <json.hpp>

namespace cube {

namespace {

using ascon::CipherParams;
using ascon::MasterKey;

struct Masks {
  // XOR masks per cube variable (tied placements set bits in both words).
  std::vector<uint64_t> m3, m4;
  uint64_t base3 = 0, base4 = 0;
};

Masks prepare(const CubeSpec& spec) {
  Masks m;
  m.m3.assign(size_t(spec.dimension), 0);
  m.m4.assign(size_t(spec.dimension), 0);
  uint64_t covered3 = 0, covered4 = 0;
  for (const auto& p : spec.placements) {
    (p.word == 3 ? m.m3 : m.m4)[size_t(p.var)] |= ascon::word_bit(p.bit);
    (p.word == 3 ? covered3 : covered4) |= ascon::word_bit(p.bit);
  }
  for (const auto& f : spec.fixed_bits) {
    (f.word == 3 ? covered3 : covered4) |= ascon::word_bit(f.bit);
    if (f.value) (f.word == 3 ? m.base3 : m.base4) |= ascon::word_bit(f.bit);
  }
  if (spec.free_policy == FreeBitPolicy::SeededRandom) {
    std::mt19937_64 rng(spec.seed);
    const uint64_t r3 = rng(), r4 = rng();
    m.base3 |= r3 & ~covered3;
    m.base4 |= r4 & ~covered4;
  }
  return m;
}

// Gray-code walk: the assignment at global index g is gray(g) = g ^ (g >> 1),
// and stepping g -> g+1 flips cube variable ctz(g+1).  Each worker owns a
// contiguous index range, so results are independent of the schedule.
struct LaneState {
  uint64_t n3, n4;
  uint64_t next_index;  // global index of the NEXT point to evaluate
};

LaneState lane_at(const Masks& m, uint64_t index) {
  LaneState s{m.base3, m.base4, index};
  uint64_t g = index ^ (index >> 1);
  while (g) {
    const int v = std::countr_zero(g);
    s.n3 ^= m.m3[size_t(v)];
    s.n4 ^= m.m4[size_t(v)];
    g &= g - 1;
  }
  return s;
}

struct Acc {
  uint64_t a0 = 0, a1 = 0;
  uint64_t evals = 0;
};

void run_range(const Masks& m, const MasterKey& key, const CipherParams& params,
               int rounds, uint64_t lo, uint64_t hi, Acc& acc) {
  constexpr int B = 8;
  const uint64_t len = hi - lo;
  const uint64_t lane_len = len / B;

  if (lane_len >= 4) {
    std::array<LaneState, B> lane;
    for (int b = 0; b < B; ++b) lane[b] = lane_at(m, lo + uint64_t(b) * lane_len);
    std::array<std::array<uint64_t, B>, 5> s;
    std::array<uint64_t, B> n3s, n4s;
    for (uint64_t k = 0; k < lane_len; ++k) {
      for (int b = 0; b < B; ++b) n3s[b] = lane[b].n3;
      for (int b = 0; b < B; ++b) n4s[b] = lane[b].n4;
      ascon::init_rate_batch<B>(s, key, params, n3s.data(), n4s.data(), rounds);
      for (int b = 0; b < B; ++b) acc.a0 ^= s[0][b];
      if (params.rate_words > 1)
        for (int b = 0; b < B; ++b) acc.a1 ^= s[1][b];
      for (int b = 0; b < B; ++b) {
        const auto v = size_t(std::countr_zero(lane[b].next_index + 1));
        if (v < m.m3.size()) {  // ctz == dimension only at the very last index
          lane[b].n3 ^= m.m3[v];
          lane[b].n4 ^= m.m4[v];
        }
        ++lane[b].next_index;
      }
    }
    acc.evals += lane_len * B;
    lo += lane_len * B;
  }

  // Scalar tail (and small ranges).
  LaneState one = lane_at(m, lo);
  std::array<std::array<uint64_t, 1>, 5> s1;
  for (uint64_t i = lo; i < hi; ++i) {
    ascon::init_rate_batch<1>(s1, key, params, &one.n3, &one.n4, rounds);
    acc.a0 ^= s1[0][0];
    if (params.rate_words > 1) acc.a1 ^= s1[1][0];
    ++acc.evals;
    if (i + 1 == hi) break;
    const auto v = size_t(std::countr_zero(i + 1));
    one.n3 ^= m.m3[v];
    one.n4 ^= m.m4[v];
  }
}

CubeSumResult run(const CubeSpec& spec, const MasterKey& key, int workers) {
  if (auto v = validate_spec(spec))
    throw std::invalid_argument("invalid cube spec: " + v->message);
  if (spec.plan_only())
    throw std::invalid_argument(
        "plan-only cube spec: dimension " + std::to_string(spec.dimension) +
        " exceeds the executable limit of " +
        std::to_string(kMaxExecutableDimension));

  const CipherParams params = CipherParams::make(spec.flavor);
  const Masks m = prepare(spec);
  const uint64_t total = 1ull << spec.dimension;

  if (workers < 1) workers = 1;
  if (uint64_t(workers) * 64 > total) workers = int(std::max<uint64_t>(1, total / 64));

  std::vector<Acc> accs(static_cast<size_t>(workers));
  if (workers == 1) {
    run_range(m, key, params, spec.rounds, 0, total, accs[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(size_t(workers));
    const uint64_t chunk = total / uint64_t(workers);
    for (int wi = 0; wi < workers; ++wi) {
      const uint64_t lo = chunk * uint64_t(wi);
      const uint64_t hi = (wi + 1 == workers) ? total : lo + chunk;
      pool.emplace_back([&, wi, lo, hi] {
        run_range(m, key, params, spec.rounds, lo, hi, accs[size_t(wi)]);
      });
    }
    for (auto& t : pool) t.join();
  }

  CubeSumResult r;
  r.sums.count = params.rate_words;
  for (const auto& a : accs) {
    r.sums.w[0] ^= a.a0;
    r.sums.w[1] ^= a.a1;
    r.evaluations += a.evals;
  }
  return r;
}

}  // namespace

CubeSumResult cube_sum(const CubeSpec& spec, const MasterKey& key) {
  return run(spec, key, 1);
}

CubeSumResult cube_sum_parallel(const CubeSpec& spec, const MasterKey& key,
                                int workers) {
  return run(spec, key, workers);
}

ascon::NonceWords base_nonce(const CubeSpec& spec) {
  const Masks m = prepare(spec);
  return {m.base3, m.base4};
}

std::string result_to_json(const CubeSumResult& r) {
  nlohmann::json j;
  j["sums"] = nlohmann::json::array();
  for (int i = 0; i < r.sums.count; ++i) j["sums"].push_back(ascon::format_hex(r.sums.w[i]));
  j["evaluations"] = r.evaluations;
  return j.dump(2);
}

}  // namespace cube
