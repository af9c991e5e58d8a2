// Systematic comparison of the symbolic derivations against the reference
// equations, coefficient tables, and condition systems, for every cube
// position i.

#pragma once

#include <string>
#include <vector>

#include "anf/reference.hpp"

namespace anf {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& c : checks) n += int(!c.pass);
    return n;
  }
  void add(std::string name, bool pass, std::string detail = "") {
    checks.push_back({std::move(name), pass, std::move(detail)});
  }
  void merge(const VerifyReport& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  }
};

// The three round-1 input polynomials of round 2's (i+1)-th S-box, in the
// no-tie, auxiliary, and auxiliary+control configurations, for every i.
VerifyReport verify_round2_equations(ascon::Flavor flavor);

// The cubic-coefficient tables (no ties / auxiliary ties / auxiliary plus
// control at offset 4), for every i.
VerifyReport verify_coefficient_tables(ascon::Flavor flavor);

// The 8-condition systems and their control flips, plus the one-bit
// conditions of the twelve IV-freed positions.
VerifyReport verify_condition_systems(ascon::Flavor flavor);

VerifyReport verify_all(ascon::Flavor flavor);

}  // namespace anf
