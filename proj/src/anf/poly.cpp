#include "anf/poly.hpp"

#include <algorithm>

namespace anf {

std::string to_string(VarId v) {
  const int i = v.index();
  switch (v.kind()) {
    case VarKind::K0: return "k0(" + std::to_string(i) + ")";
    case VarKind::K1: return "k1(" + std::to_string(i) + ")";
    case VarKind::Nonce3: return "n3(" + std::to_string(i) + ")";
    case VarKind::Nonce4: return "n4(" + std::to_string(i) + ")";
    case VarKind::Cube: return "v" + std::to_string(i);
  }
  return "?";
}

Monomial::Monomial(std::initializer_list<VarId> vs) {
  Monomial acc;
  for (VarId v : vs) acc = acc * Monomial(v);
  *this = acc;
}

bool Monomial::contains(VarId v) const {
  return std::binary_search(begin(), end(), v);
}

int Monomial::degree_of_kind(VarKind k) const {
  int n = 0;
  for (VarId v : *this) n += int(v.kind() == k);
  return n;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  int i = 0, j = 0;
  while (i < a.len_ || j < b.len_) {
    VarId next;
    if (j >= b.len_ || (i < a.len_ && a.vars_[i] <= b.vars_[j])) {
      next = a.vars_[i++];
      if (j < b.len_ && b.vars_[j] == next) ++j;  // x*x = x
    } else {
      next = b.vars_[j++];
    }
    if (out.len_ >= Monomial::kMaxDegree)
      throw ResourceLimitError("monomial degree cap exceeded");
    out.vars_[out.len_++] = next;
  }
  return out;
}

bool Monomial::divide_by(const Monomial& m, Monomial& quotient) const {
  Monomial q;
  int j = 0;
  for (int i = 0; i < len_; ++i) {
    if (j < m.len_ && vars_[i] == m.vars_[j]) {
      ++j;
    } else {
      q.vars_[q.len_++] = vars_[i];
    }
  }
  if (j != m.len_) return false;
  quotient = q;
  return true;
}

std::string Monomial::str() const {
  if (len_ == 0) return "1";
  std::string s;
  for (int i = 0; i < len_; ++i) {
    if (i) s += "*";
    s += to_string(vars_[i]);
  }
  return s;
}

Polynomial Polynomial::from_monomial(Monomial m) {
  Polynomial p;
  p.terms_.push_back(m);
  return p;
}

Polynomial Polynomial::from_monomials(std::vector<Monomial> ms) {
  std::sort(ms.begin(), ms.end());
  Polynomial p;
  for (size_t i = 0; i < ms.size();) {
    size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    if ((j - i) & 1) p.terms_.push_back(ms[i]);
    i = j;
  }
  return p;
}

int Polynomial::max_degree() const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.degree());
  return d;
}

int Polynomial::max_degree_of_kind(VarKind k) const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, m.degree_of_kind(k));
  return d;
}

bool Polynomial::uses_kind(VarKind k) const {
  for (const auto& m : terms_)
    if (m.degree_of_kind(k) > 0) return true;
  return false;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() && ib != b.terms_.end()) {
    if (*ia == *ib) {
      ++ia;
      ++ib;  // cancels over GF(2)
    } else if (*ia < *ib) {
      out.terms_.push_back(*ia++);
    } else {
      out.terms_.push_back(*ib++);
    }
  }
  out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
  out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<Monomial> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ma : a.terms_)
    for (const auto& mb : b.terms_) prod.push_back(ma * mb);
  return Polynomial::from_monomials(std::move(prod));
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial substitute(const Polynomial& p, VarId v, const Polynomial& replacement) {
  for (const auto& m : replacement.terms())
    if (m.contains(v))
      throw std::invalid_argument("substitute: replacement for " + to_string(v) +
                                  " mentions the variable itself");
  std::vector<Monomial> keep, quot;
  const Monomial mv{v};
  for (const auto& m : p.terms()) {
    Monomial q;
    if (m.divide_by(mv, q))
      quot.push_back(q);
    else
      keep.push_back(m);
  }
  return Polynomial::from_monomials(std::move(keep)) +
         Polynomial::from_monomials(std::move(quot)) * replacement;
}

Polynomial coefficient_of(const Polynomial& p, const Monomial& m) {
  std::vector<Monomial> quot;
  for (const auto& t : p.terms()) {
    Monomial q;
    if (t.divide_by(m, q)) quot.push_back(q);
  }
  return Polynomial::from_monomials(std::move(quot));
}

uint64_t evaluate_lanes(const Polynomial& p, const LaneAssignment& a) {
  uint64_t acc = 0;
  for (const auto& m : p.terms()) {
    uint64_t t = ~0ull;
    for (VarId v : m) t &= a[v];
    acc ^= t;
  }
  return acc;
}

Polynomial partial_evaluate(
    const Polynomial& p, const std::function<std::optional<int>(VarId)>& value_of) {
  std::vector<Monomial> out;
  out.reserve(p.terms().size());
  for (const auto& m : p.terms()) {
    Monomial kept;
    bool dead = false;
    for (VarId v : m) {
      if (auto val = value_of(v)) {
        if (*val == 0) {
          dead = true;
          break;
        }
      } else {
        kept = kept * Monomial(v);
      }
    }
    if (!dead) out.push_back(kept);
  }
  return Polynomial::from_monomials(std::move(out));
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += " + ";
    s += terms_[i].str();
  }
  return s;
}

}  // namespace anf
