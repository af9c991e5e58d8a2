#include "anf/conditions.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "ascon/permutation.hpp"

namespace anf {

using ascon::mod64;

const CubicRow* CoefficientTable::find(int sbox_offset, int term_offset) const {
  for (const auto& r : rows)
    if (r.sbox_offset == sbox_offset && r.term_offset == term_offset) return &r;
  return nullptr;
}

std::pair<WordSlots, WordSlots> subset_cube_slots(int i, const std::set<int>& tied_offsets) {
  WordSlots s3, s4;
  for (int j = 0; j < 64; ++j) {
    s3[size_t(j)] = Slot::cube(j);
    s4[size_t(j)] = Slot::nonce();
  }
  s4[size_t(mod64(i))] = Slot::cube(64);
  for (int o : tied_offsets) s4[size_t(mod64(i + o))] = Slot::cube(mod64(i + o));
  return {s3, s4};
}

CoefficientTable extract_cubic_coefficients(int i, const std::set<int>& aux,
                                            const std::set<int>& control,
                                            ascon::Flavor flavor) {
  i = mod64(i);
  std::set<int> tied = aux;
  tied.insert(control.begin(), control.end());
  auto [s3, s4] = subset_cube_slots(i, tied);
  SymbolicState st = symbolic_init(flavor, s3, s4);
  advance_to(st, 1.0);

  CoefficientTable table;
  table.i = i;
  table.flavor = flavor;
  table.aux = aux;
  table.control = control;

  const VarId vi = cube_var(i), v64 = cube_var(64);
  // map (sbox_offset, term_offset) -> coefficient polynomial per output bit
  std::map<std::pair<int, int>, std::array<Polynomial, 5>> per_output;

  for (int off : {0, 1, 6}) {
    const int col = mod64(i + off);
    const auto y = sbox_column(st, col);
    for (int out = 0; out < 5; ++out) {
      for (const auto& mono : y[size_t(out)].terms()) {
        if (mono.degree_of_kind(VarKind::Cube) != 3) continue;
        if (!mono.contains(vi) || !mono.contains(v64)) continue;
        int j = -1;
        Monomial rest;
        for (VarId v : mono) {
          if (v == vi || v == v64) continue;
          if (v.kind() == VarKind::Cube)
            j = v.index();
          else
            rest = rest * Monomial(v);
        }
        if (j < 0) continue;
        auto& slot = per_output[{off, mod64(j - i)}];
        slot[size_t(out)] += Polynomial::from_monomial(rest);
      }
    }
  }

  for (auto& [key, outs] : per_output) {
    CubicRow row;
    row.sbox_offset = key.first;
    row.term_offset = key.second;
    for (int out = 0; out < 5; ++out) {
      if (outs[size_t(out)].is_zero()) continue;
      auto it = std::find_if(row.coefficients.begin(), row.coefficients.end(),
                             [&](const auto& c) { return c.first == outs[size_t(out)]; });
      if (it == row.coefficients.end())
        row.coefficients.push_back({outs[size_t(out)], {out}});
      else
        it->second.push_back(out);
    }
    if (!row.coefficients.empty()) table.rows.push_back(std::move(row));
  }
  std::sort(table.rows.begin(), table.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sbox_offset, a.term_offset) < std::tie(b.sbox_offset, b.term_offset);
  });
  return table;
}

std::optional<int> ConditionSystem::rhs_for(int index) const {
  for (const auto& c : conditions)
    if (c.index == index) return c.rhs;
  return std::nullopt;
}

bool ConditionSystem::satisfied_by(const ascon::MasterKey& key) const {
  if (!satisfiable) return false;
  for (const auto& c : conditions) {
    const int b = ascon::get_bit(key.k0, c.index) ^ ascon::get_bit(key.k1, c.index);
    if (b != c.rhs) return false;
  }
  return true;
}

ConditionSystem derive_key_conditions(const CoefficientTable& table) {
  ConditionSystem sys;
  std::map<int, int> rhs_by_index;
  for (const auto& row : table.rows) {
    for (const auto& [coeff, outs] : row.coefficients) {
      (void)outs;
      if (coeff.is_zero()) continue;
      // Classify: must be k0(j) + k1(j) (+ 1), same j in both.
      int j = -1, constant = 0;
      bool k0_seen = false, k1_seen = false;
      for (const auto& m : coeff.terms()) {
        if (m.is_one()) {
          constant = 1;
          continue;
        }
        if (m.degree() != 1)
          throw std::domain_error("non-affine cubic coefficient: " + coeff.str());
        const VarId v = *m.begin();
        if (v.kind() == VarKind::K0 && (j < 0 || j == v.index()) && !k0_seen) {
          j = v.index();
          k0_seen = true;
        } else if (v.kind() == VarKind::K1 && (j < 0 || j == v.index()) && !k1_seen) {
          j = v.index();
          k1_seen = true;
        } else {
          throw std::domain_error("cubic coefficient is not of the form b(j)+c: " +
                                  coeff.str());
        }
      }
      if (!k0_seen && !k1_seen) {
        // Pure constant 1: no key choice can zero this row.
        sys.satisfiable = false;
        sys.issues.push_back("coefficient of v" + std::to_string(table.i) + "*v64*v" +
                             std::to_string(mod64(table.i + row.term_offset)) +
                             " is the constant 1");
        continue;
      }
      if (!(k0_seen && k1_seen))
        throw std::domain_error("cubic coefficient is not affine in b(j): " +
                                coeff.str());
      auto [it, inserted] = rhs_by_index.emplace(j, constant);
      if (!inserted && it->second != constant) {
        sys.satisfiable = false;
        sys.issues.push_back("conflicting requirements on b(" + std::to_string(j) +
                             ")");
      }
    }
  }
  for (const auto& [index, rhs] : rhs_by_index) sys.conditions.push_back({index, rhs});
  return sys;
}

std::string table_to_json(const CoefficientTable& table) {
  nlohmann::json j;
  j["i"] = table.i;
  j["flavor"] = table.flavor == ascon::Flavor::Ascon128 ? "128" : "128a";
  j["aux_offsets"] = table.aux;
  j["control_offsets"] = table.control;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jr;
    jr["sbox"] = "i+" + std::to_string(row.sbox_offset);
    jr["cubic_term"] = "v" + std::to_string(table.i) + "*v64*v" +
                       std::to_string(mod64(table.i + row.term_offset));
    jr["term_offset"] = row.term_offset;
    jr["coefficients"] = nlohmann::json::array();
    for (const auto& [poly, outs] : row.coefficients)
      jr["coefficients"].push_back({{"poly", poly.str()}, {"outputs", outs}});
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2);
}

int max_cube_degree(const ascon::MasterKey& key, int i, const std::set<int>& aux,
                    const std::set<int>& control, ascon::Flavor flavor, int rounds) {
  std::set<int> tied = aux;
  tied.insert(control.begin(), control.end());
  auto [s3, s4] = subset_cube_slots(mod64(i), tied);
  // Non-cube nonce bits are pinned to zero; only cube variables stay symbolic.
  for (auto& slot : s4)
    if (slot.kind == Slot::Kind::NonceSym) slot = Slot::fixed(0);
  SymbolicState st = symbolic_init(flavor, s3, s4, key);
  advance_to(st, double(rounds));
  int deg = 0;
  for (const auto& word : st.bits)
    for (const auto& p : word) deg = std::max(deg, p.max_degree_of_kind(VarKind::Cube));
  return deg;
}

}  // namespace anf
