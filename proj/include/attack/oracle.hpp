// The attacker's view of the keyed, round-reduced initialization: single
// chosen-nonce queries and whole cube sums, with an exact call counter.

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "cube/engine.hpp"

namespace attack {

class InitOracle {
 public:
  virtual ~InitOracle() = default;

  virtual ascon::RateWords query(const ascon::NonceWords& nonce) = 0;
  virtual cube::CubeSumResult cube_sum(const cube::CubeSpec& spec) = 0;

  virtual int rounds() const = 0;
  virtual ascon::Flavor flavor() const = 0;
  virtual uint64_t calls() const = 0;
};

// Production oracle holding the secret key.  Thread-safe call counting;
// cube sums fan out over `workers` threads.
class KeyedInitOracle final : public InitOracle {
 public:
  KeyedInitOracle(const ascon::MasterKey& key, int rounds, ascon::Flavor flavor,
                  int workers = 1)
      : key_(key), rounds_(rounds), flavor_(flavor), workers_(workers) {}

  ascon::RateWords query(const ascon::NonceWords& nonce) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return ascon::init_oracle(key_, nonce, rounds_,
                              ascon::CipherParams::make(flavor_));
  }

  cube::CubeSumResult cube_sum(const cube::CubeSpec& spec) override {
    auto r = cube::cube_sum_parallel(spec, key_, workers_);
    calls_.fetch_add(r.evaluations, std::memory_order_relaxed);
    return r;
  }

  int rounds() const override { return rounds_; }
  ascon::Flavor flavor() const override { return flavor_; }
  uint64_t calls() const override { return calls_.load(std::memory_order_relaxed); }

 private:
  ascon::MasterKey key_;
  int rounds_;
  ascon::Flavor flavor_;
  int workers_;
  std::atomic<uint64_t> calls_{0};
};

}  // namespace attack
