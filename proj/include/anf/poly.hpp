// Sparse algebraic normal forms over GF(2).
//
// A polynomial is a set of monomials (XOR addition, x*x = x), each monomial a
// canonically sorted list of typed variables: key bits k0(i)/k1(i), nonce
// bits n3(i)/n4(i), and cube variables v0..v64.  IV bits are folded to
// constants at state construction and never appear here.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anf {

enum class VarKind : uint8_t { K0 = 0, K1 = 1, Nonce3 = 2, Nonce4 = 3, Cube = 4 };

// Packed as (kind << 7) | index; index 0..63 (cube: 0..64).
struct VarId {
  uint16_t id = 0;

  constexpr VarKind kind() const { return VarKind(id >> 7); }
  constexpr int index() const { return id & 0x7f; }
  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

constexpr VarId make_var(VarKind k, int index) {
  return VarId{uint16_t((uint16_t(k) << 7) | uint16_t(index))};
}
constexpr VarId k0_var(int i) { return make_var(VarKind::K0, i); }
constexpr VarId k1_var(int i) { return make_var(VarKind::K1, i); }
constexpr VarId n3_var(int i) { return make_var(VarKind::Nonce3, i); }
constexpr VarId n4_var(int i) { return make_var(VarKind::Nonce4, i); }
constexpr VarId cube_var(int i) { return make_var(VarKind::Cube, i); }

std::string to_string(VarId v);

// Raised when a symbolic computation grows past its configured budget.  The
// engine never truncates: it either finishes exactly or fails loudly.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Monomial {
 public:
  static constexpr int kMaxDegree = 16;

  Monomial() = default;  // the constant 1
  explicit Monomial(VarId v) : len_(1) { vars_[0] = v; }
  Monomial(std::initializer_list<VarId> vs);

  int degree() const { return len_; }
  bool is_one() const { return len_ == 0; }
  bool contains(VarId v) const;
  const VarId* begin() const { return vars_.data(); }
  const VarId* end() const { return vars_.data() + len_; }

  int degree_of_kind(VarKind k) const;

  // Product with idempotent variables; throws ResourceLimitError past the
  // degree cap.
  friend Monomial operator*(const Monomial& a, const Monomial& b);

  // True and assigns quotient when every variable of m divides *this.
  bool divide_by(const Monomial& m, Monomial& quotient) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.len_ != b.len_) return false;
    for (int i = 0; i < a.len_; ++i)
      if (a.vars_[i] != b.vars_[i]) return false;
    return true;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    const int n = a.len_ < b.len_ ? a.len_ : b.len_;
    for (int i = 0; i < n; ++i) {
      if (a.vars_[i] != b.vars_[i]) return a.vars_[i] < b.vars_[i];
    }
    return a.len_ < b.len_;
  }

  std::string str() const;

 private:
  std::array<VarId, kMaxDegree> vars_{};
  int len_ = 0;
};

class Polynomial {
 public:
  Polynomial() = default;  // zero

  static Polynomial zero() { return {}; }
  static Polynomial one() { return from_monomial(Monomial{}); }
  static Polynomial var(VarId v) { return from_monomial(Monomial{v}); }
  static Polynomial constant(int c) { return c & 1 ? one() : zero(); }
  static Polynomial from_monomial(Monomial m);
  // Takes an arbitrary monomial list, sorts, and cancels duplicate pairs.
  static Polynomial from_monomials(std::vector<Monomial> ms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
  size_t term_count() const { return terms_.size(); }
  const std::vector<Monomial>& terms() const { return terms_; }

  int max_degree() const;
  int max_degree_of_kind(VarKind k) const;
  bool uses_kind(VarKind k) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // "k0(3)*k1(3) + v12*v64 + 1"; "0" for the zero polynomial.  Term order is
  // the canonical monomial order, so output is stable for diffing.
  std::string str() const;

 private:
  std::vector<Monomial> terms_;  // sorted ascending, no duplicates
};

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);

// Substitutes `replacement` for every occurrence of `v`.  Rejects a
// replacement that itself mentions `v`.
Polynomial substitute(const Polynomial& p, VarId v, const Polynomial& replacement);

// The polynomial c with p = m*c + (terms of p not divisible by m).
Polynomial coefficient_of(const Polynomial& p, const Monomial& m);

// 64 assignments evaluated at once: each variable carries one bit per lane.
struct LaneAssignment {
  // Indexed by the packed VarId (5 kinds x 128 slots).
  std::array<uint64_t, 5 * 128> lanes{};

  uint64_t& operator[](VarId v) { return lanes[v.id]; }
  uint64_t operator[](VarId v) const { return lanes[v.id]; }
};

uint64_t evaluate_lanes(const Polynomial& p, const LaneAssignment& a);

inline int evaluate(const Polynomial& p, const LaneAssignment& a) {
  return int(evaluate_lanes(p, a) & 1);
}

// Partial evaluation: variables mapped to 0/1 are folded, others kept.
Polynomial partial_evaluate(const Polynomial& p,
                            const std::function<std::optional<int>(VarId)>& value_of);

}  // namespace anf
