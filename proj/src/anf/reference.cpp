#include "anf/reference.hpp"

#include "ascon/permutation.hpp"

namespace anf {

using ascon::get_bit;
using ascon::mod64;

namespace {

Polynomial P1() { return Polynomial::one(); }
Polynomial PV(VarId v) { return Polynomial::var(v); }

int iv_bit(ascon::Flavor flavor, int j) {
  return get_bit(ascon::CipherParams::make(flavor).iv, mod64(j));
}

Polynomial b_poly(int j) { return PV(k0_var(mod64(j))) + PV(k1_var(mod64(j))); }

}  // namespace

Polynomial absorb_first_round_constant(const Polynomial& p) {
  // Rewrites k1(j) as k1(j)+1 for j in 56..59: every monomial containing the
  // variable is expanded into itself plus its quotient.
  Polynomial out = p;
  for (int j = 56; j <= 59; ++j) {
    std::vector<Monomial> ms;
    const Monomial mv{k1_var(j)};
    for (const auto& m : out.terms()) {
      ms.push_back(m);
      Monomial q;
      if (m.divide_by(mv, q)) ms.push_back(q);
    }
    out = Polynomial::from_monomials(std::move(ms));
  }
  return out;
}

Polynomial reference_s1_word1(int i, ascon::Flavor flavor, ReferenceWord1Options opt) {
  Polynomial acc;
  for (int o : {1, 4, 26}) {
    const int j = mod64(i + o);
    const bool tied = (o == 1 && opt.aux1) || (o == 4 && opt.control4);
    Polynomial vcoeff = b_poly(j);
    if (!tied) vcoeff += P1();
    acc += vcoeff * PV(cube_var(j));
    if (!tied) acc += PV(n4_var(j));
    acc += PV(k0_var(j)) * PV(k1_var(j)) + PV(k0_var(j)) + PV(k1_var(j)) +
           Polynomial::constant(iv_bit(flavor, j));
  }
  return absorb_first_round_constant(acc);
}

Polynomial reference_s1_word2(int i, ascon::Flavor flavor, bool aux1, bool verbatim) {
  (void)flavor;  // no IV contribution: y2 has no x0 term
  Polynomial acc = PV(cube_var(mod64(i))) * PV(cube_var(64));
  for (int o : {0, 1, 59})
    acc += PV(k0_var(mod64(i + o))) + PV(k1_var(mod64(i + o)));
  // column i+1: x4*x3 + x4 with x3 = v_{i+1}
  const int j1 = mod64(i + 1);
  if (aux1) {
    // tied: v*v + v = 0
  } else {
    acc += PV(n4_var(j1)) * PV(cube_var(j1)) + PV(n4_var(j1));
  }
  // column i+59
  const int j59 = mod64(i + 59);
  acc += PV(n4_var(j59)) * PV(cube_var(j59)) + PV(n4_var(j59));
  // column i: x4 = v64 (the published text prints this term as v_{i+64})
  acc += PV(cube_var(64));
  if (!verbatim) acc += P1();  // three y2 constants
  return absorb_first_round_constant(acc);
}

Polynomial reference_s1_word3(int i, ascon::Flavor flavor, bool aux1, bool aux48,
                              bool aux55) {
  Polynomial acc;
  for (int o : {1, 48, 55}) {
    const int j = mod64(i + o);
    const bool tied = (o == 1 && aux1) || (o == 48 && aux48) || (o == 55 && aux55);
    if (!tied) {
      const Polynomial w = Polynomial::constant(iv_bit(flavor, j)) + P1();
      acc += w * (PV(cube_var(j)) + PV(n4_var(j)));
    }
    acc += PV(k0_var(j)) + PV(k1_var(j)) + Polynomial::constant(iv_bit(flavor, j));
  }
  return absorb_first_round_constant(acc);
}

std::vector<ReferenceCubicRow> reference_cubic_rows(int i, ascon::Flavor flavor,
                                                    const std::set<int>& aux,
                                                    const std::set<int>& control) {
  struct RowShape {
    int sbox;
    int term;
    bool key_kind;  // true: b(i+term)+1 rows; false: IV(i+term)+1 row
    bool dual;      // key rows appearing in both y0 and y1 via the x3 route
  };
  // x1 of box i+1 carries v at offsets 1/4/26, x3 at 1/48/55; x1 of box i at
  // 3/25, x3 at 47/54; x1 of box i+6 at 6/9/31, x3 at 53/60.  Offsets 1 and 6
  // ride both routes, which is where the paired coefficient rows come from.
  static const std::vector<RowShape> shapes{
      {1, 1, true, true},   {1, 4, true, false},  {1, 26, true, false},
      {1, 48, false, false}, {1, 55, false, false},
      {0, 3, true, false},  {0, 25, true, false},
      {0, 47, false, false}, {0, 54, false, false},
      {6, 6, true, true},   {6, 9, true, false},  {6, 31, true, false},
      {6, 53, false, false}, {6, 60, false, false}};

  std::vector<ReferenceCubicRow> rows;
  for (const auto& sh : shapes) {
    const int j = mod64(i + sh.term);
    const bool tied = aux.count(sh.term) || control.count(sh.term);
    ReferenceCubicRow row{sh.sbox, sh.term, {}};
    auto push_distinct = [&](Polynomial p) {
      p = absorb_first_round_constant(p);
      if (p.is_zero()) return;
      for (const auto& q : row.coefficients)
        if (q == p) return;
      row.coefficients.push_back(std::move(p));
    };
    if (sh.key_kind) {
      // y0 route: b(j)+1, or b(j) when the slot is tied.
      Polynomial y0 = b_poly(j);
      if (!tied) y0 += P1();
      push_distinct(y0);
      if (sh.dual) {
        // y1 route adds the x3 contribution (IV(j)+1), cancelled when tied.
        Polynomial y1 = b_poly(j);
        if (!tied) y1 += P1() + Polynomial::constant(iv_bit(flavor, j)) + P1();
        push_distinct(y1);
      }
    } else {
      if (!tied) push_distinct(Polynomial::constant(iv_bit(flavor, j)) + P1());
    }
    if (!row.coefficients.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

ConditionSystem reference_condition_system(int i, const std::set<int>& control,
                                           bool case2_frees_1, bool case2_frees_6) {
  // Base right-hand sides of the aux-table system.
  static const std::vector<std::pair<int, int>> base{
      {1, 0}, {4, 1}, {26, 1}, {3, 1}, {25, 1}, {6, 0}, {9, 1}, {31, 1}};
  ConditionSystem sys;
  for (auto [o, rhs] : base) {
    if (o == 1 && case2_frees_1) rhs = 1;  // no aux at i+1: coefficient is b+1
    if (o == 6 && case2_frees_6) rhs = 1;
    if (control.count(o)) rhs ^= 1;
    const int j = mod64(i + o);
    if (j >= 56 && j <= 59) rhs ^= 1;  // first-round constant
    sys.conditions.push_back({j, rhs});
  }
  std::sort(sys.conditions.begin(), sys.conditions.end());
  return sys;
}

std::vector<int> published_case2_condition_indexes_ip1() {
  return {5, 14, 25, 26, 34, 35};
}
std::vector<int> published_case2_condition_indexes_ip6() {
  return {59, 4, 15, 16, 24, 25};
}

}  // namespace anf
