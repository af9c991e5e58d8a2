#include "anf/symbolic.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "ascon/permutation.hpp"
#include "cube/engine.hpp"

namespace anf {

namespace {

void check_limit(const SymbolicState& s, const Polynomial& p) {
  if (p.term_count() > s.monomial_limit)
    throw ResourceLimitError("symbolic state bit grew past the monomial budget (" +
                             std::to_string(p.term_count()) + " terms)");
}

// S-box outputs for five input polynomials, driven by the table ANF.
std::array<Polynomial, 5> sbox_symbolic(const std::array<const Polynomial*, 5>& x) {
  static const ascon::SboxAnf anf = ascon::sbox_anf();
  // Memoize the pairwise products this column needs.
  std::map<std::pair<int, int>, Polynomial> pair_cache;
  auto product = [&](int a, int b) -> const Polynomial& {
    auto key = std::minmax(a, b);
    auto it = pair_cache.find(key);
    if (it == pair_cache.end())
      it = pair_cache.emplace(key, (*x[size_t(key.first)]) * (*x[size_t(key.second)])).first;
    return it->second;
  };
  std::array<Polynomial, 5> y;
  for (int out = 0; out < 5; ++out) {
    Polynomial acc;
    for (uint32_t m = 0; m < 32; ++m) {
      if (!((anf.coeff[size_t(out)] >> m) & 1u)) continue;
      if (m == 0) {
        acc += Polynomial::one();
      } else if (std::popcount(m) == 1) {
        acc += *x[size_t(std::countr_zero(m))];
      } else {  // the S-box is quadratic: exactly two variables
        const int a = std::countr_zero(m);
        const int b = 31 - std::countl_zero(m);
        acc += product(a, b);
      }
    }
    y[size_t(out)] = std::move(acc);
  }
  return y;
}

}  // namespace

bool SymbolicState::has_key_vars() const {
  for (const auto& word : bits)
    for (const auto& p : word)
      if (p.uses_kind(VarKind::K0) || p.uses_kind(VarKind::K1)) return true;
  return false;
}

SymbolicState symbolic_init(ascon::Flavor flavor, const WordSlots& slots3,
                            const WordSlots& slots4,
                            const std::optional<ascon::MasterKey>& concrete_key) {
  SymbolicState s;
  s.params = ascon::CipherParams::make(flavor);

  auto check_word = [](const WordSlots& slots) {
    std::map<int, int> seen;
    for (const auto& slot : slots)
      if (slot.kind == Slot::Kind::CubeVar && ++seen[slot.value] > 1)
        throw std::invalid_argument("cube variable v" + std::to_string(slot.value) +
                                    " assigned twice within one word");
  };
  check_word(slots3);
  check_word(slots4);

  for (int k = 0; k < 64; ++k) {
    s.bits[0][size_t(k)] = Polynomial::constant(ascon::get_bit(s.params.iv, k));
    if (concrete_key) {
      s.bits[1][size_t(k)] = Polynomial::constant(ascon::get_bit(concrete_key->k0, k));
      s.bits[2][size_t(k)] = Polynomial::constant(ascon::get_bit(concrete_key->k1, k));
    } else {
      s.bits[1][size_t(k)] = Polynomial::var(k0_var(k));
      s.bits[2][size_t(k)] = Polynomial::var(k1_var(k));
    }
  }
  auto fill = [](std::array<Polynomial, 64>& word, const WordSlots& slots, VarKind nonce_kind) {
    for (int k = 0; k < 64; ++k) {
      const Slot& slot = slots[size_t(k)];
      switch (slot.kind) {
        case Slot::Kind::Fixed: word[size_t(k)] = Polynomial::constant(slot.value); break;
        case Slot::Kind::CubeVar: word[size_t(k)] = Polynomial::var(cube_var(slot.value)); break;
        case Slot::Kind::NonceSym: word[size_t(k)] = Polynomial::var(make_var(nonce_kind, k)); break;
      }
    }
  };
  fill(s.bits[3], slots3, VarKind::Nonce3);
  fill(s.bits[4], slots4, VarKind::Nonce4);
  return s;
}

std::pair<WordSlots, WordSlots> slots_from_cube_spec(const cube::CubeSpec& spec) {
  if (auto v = cube::validate_spec(spec))
    throw std::invalid_argument("invalid cube spec: " + v->message);
  const ascon::NonceWords base = cube::base_nonce(spec);
  WordSlots s3, s4;
  for (int k = 0; k < 64; ++k) {
    s3[size_t(k)] = Slot::fixed(ascon::get_bit(base.n3, k));
    s4[size_t(k)] = Slot::fixed(ascon::get_bit(base.n4, k));
  }
  for (const auto& p : spec.placements)
    (p.word == 3 ? s3 : s4)[size_t(p.bit)] = Slot::cube(p.var);
  return {s3, s4};
}

void advance_half_step(SymbolicState& s) {
  const bool substitution_due = (s.half_steps % 2) == 0;
  if (substitution_due) {
    const int round_index = s.half_steps / 2;
    if (round_index >= 2 && s.has_key_vars())
      throw std::domain_error(
          "symbolic advancement past round 2 requires a concrete key");
    const uint8_t rc = ascon::round_constant(round_index, s.params.pa_rounds);
    for (int k = 56; k < 64; ++k)
      if (ascon::get_bit(uint64_t(rc), k))  // constant sits in the low byte
        s.bits[2][size_t(k)] += Polynomial::one();
    for (int k = 0; k < 64; ++k) {
      const auto y = sbox_symbolic({&s.bits[0][size_t(k)], &s.bits[1][size_t(k)],
                                    &s.bits[2][size_t(k)], &s.bits[3][size_t(k)],
                                    &s.bits[4][size_t(k)]});
      for (int w = 0; w < 5; ++w) {
        s.bits[size_t(w)][size_t(k)] = y[size_t(w)];
        check_limit(s, s.bits[size_t(w)][size_t(k)]);
      }
    }
  } else {
    for (int w = 0; w < 5; ++w) {
      const auto [r1, r2] = ascon::kLinearRotations[size_t(w)];
      std::array<Polynomial, 64> out;
      for (int k = 0; k < 64; ++k) {
        out[size_t(k)] = s.bits[size_t(w)][size_t(ascon::mod64(k))] +
                         s.bits[size_t(w)][size_t(ascon::mod64(k - r1))] +
                         s.bits[size_t(w)][size_t(ascon::mod64(k - r2))];
        check_limit(s, out[size_t(k)]);
      }
      s.bits[size_t(w)] = std::move(out);
    }
  }
  ++s.half_steps;
}

void advance_to(SymbolicState& s, double target_rounds) {
  const int target_half = int(target_rounds * 2 + 0.5);
  if (target_half < s.half_steps)
    throw std::invalid_argument("cannot advance backwards");
  while (s.half_steps < target_half) advance_half_step(s);
}

std::array<Polynomial, 5> sbox_column(const SymbolicState& s, int k) {
  if (s.half_steps % 2 != 0)
    throw std::logic_error("sbox_column: state is mid-round");
  k = ascon::mod64(k);
  const int round_index = s.half_steps / 2;
  const uint8_t rc = ascon::round_constant(round_index, s.params.pa_rounds);
  Polynomial x2 = s.bits[2][size_t(k)];
  if (ascon::get_bit(uint64_t(rc), k)) x2 += Polynomial::one();
  return sbox_symbolic({&s.bits[0][size_t(k)], &s.bits[1][size_t(k)], &x2,
                        &s.bits[3][size_t(k)], &s.bits[4][size_t(k)]});
}

std::array<std::array<uint64_t, 64>, 5> evaluate_state_lanes(
    const SymbolicState& s, const LaneAssignment& a) {
  std::array<std::array<uint64_t, 64>, 5> out{};
  for (int w = 0; w < 5; ++w)
    for (int k = 0; k < 64; ++k)
      out[size_t(w)][size_t(k)] = evaluate_lanes(s.bits[size_t(w)][size_t(k)], a);
  return out;
}

}  // namespace anf
