// ascon-cube-workbench command line.
//
// Subcommands: attack (5/6-round key recovery), verify-anf (symbolic
// derivation checks), plan7 (7-round subset plan and complexity ledger),
// tests (randomized rationality tests), sum (one cube sum from a spec file),
// dump-params (write the parameter tables).
//
// Exit codes: 0 success/match, 1 mismatch or failed check, 2 usage error,
// 3 resource limit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "anf/verify.hpp"
#include "attack/recover.hpp"
#include "plan/plan.hpp"

using nlohmann::json;

namespace {

struct Common {
  std::string flavor = "128";
  uint64_t seed = 1;
  int threads = int(std::thread::hardware_concurrency());
  std::string key_hex;
  uint64_t key_seed = 0;
  std::string out_path;

  ascon::Flavor parsed_flavor() const {
    return flavor == "128a" ? ascon::Flavor::Ascon128a : ascon::Flavor::Ascon128;
  }

  ascon::MasterKey key() const {
    if (!key_hex.empty()) {
      if (key_hex.size() != 32)
        throw std::invalid_argument("--key must be 32 hex chars (k0||k1)");
      return {ascon::parse_hex_word(key_hex.substr(0, 16)),
              ascon::parse_hex_word(key_hex.substr(16))};
    }
    std::mt19937_64 rng(key_seed);
    return {rng(), rng()};
  }

  json header(const std::string& command) const {
    json h;
    h["command"] = command;
    h["flavor"] = flavor;
    h["seed"] = seed;
    h["threads"] = threads;
    h["key_source"] = key_hex.empty() ? "seed:" + std::to_string(key_seed) : "hex";
    return h;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_key = true) {
  cmd->add_option("--flavor", c.flavor, "cipher flavor: 128 or 128a")
      ->check(CLI::IsMember({"128", "128a"}));
  cmd->add_option("--seed", c.seed, "seed for all derived randomness");
  cmd->add_option("--threads", c.threads, "worker threads for cube sums");
  if (with_key) {
    auto* key = cmd->add_option("--key", c.key_hex, "key as 32 hex chars (k0||k1)");
    cmd->add_option("--key-seed", c.key_seed, "derive the key from this seed")
        ->excludes(key);
  }
  cmd->add_option("--out", c.out_path, "write the structured report here");
}

void write_report(const Common& c, const json& report) {
  if (c.out_path.empty()) return;
  std::ofstream f(c.out_path);
  f << report.dump(2) << "\n";
}

int run_attack(const Common& c, int rounds, std::vector<int> ts, int budget_bits,
               const std::string& free_bits) {
  if (rounds != 5 && rounds != 6) {
    std::cerr << "attack supports --rounds 5 or 6; the 7-round attack is plan-only"
                 " (see plan7)\n";
    return 2;
  }
  const ascon::MasterKey key = c.key();
  const auto params = attack::load_params(rounds);
  attack::KeyedInitOracle oracle(key, rounds, c.parsed_flavor(), c.threads);

  std::vector<attack::PerTRecord> trace;
  attack::RecoverOptions opt;
  opt.t_values = ts;
  opt.policy = free_bits == "zero" ? cube::FreeBitPolicy::Zero
                                   : cube::FreeBitPolicy::SeededRandom;
  opt.seed = c.seed;
  opt.trace = &trace;

  const auto t0 = std::chrono::steady_clock::now();
  const attack::RecoveredKeyInfo info = attack::recover_bits(oracle, params, opt);
  const bool full = ts.empty();

  json report;
  report["header"] = c.header("attack");
  report["rounds"] = rounds;
  report["per_t"] = json::array();
  for (const auto& r : trace) {
    json jt;
    jt["t"] = r.t;
    jt["sums_tried"] = r.sums_tried;
    if (r.k0) jt["k0"] = *r.k0;
    if (r.k0_plus_k1) jt["k0_plus_k1"] = *r.k0_plus_k1;
    report["per_t"].push_back(std::move(jt));
  }
  report["remain"] = info.remain();
  report["oracle_calls"] = oracle.calls();
  report["worst_case_calls"] = attack::attack_cost(params, full ? 64 : int(ts.size()));

  bool ok = true;
  if (full) {
    const ascon::MasterKey recovered = attack::exhaustive_completion(
        info, oracle, c.seed ^ 0x9e3779b97f4a7c15ull, budget_bits);
    ok = recovered == key;
    report["recovered_key"] =
        ascon::format_hex(recovered.k0) + ascon::format_hex(recovered.k1);
  } else {
    for (int t : ts) {
      if (info.known(0, t) && info.bits[0][size_t(t)] != ascon::get_bit(key.k0, t))
        ok = false;
      if (info.known(1, t) &&
          info.bits[1][size_t(t)] !=
              (ascon::get_bit(key.k0, t) ^ ascon::get_bit(key.k1, t)))
        ok = false;
    }
  }
  report["match"] = ok;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  for (const auto& r : trace) {
    std::cout << "t=" << r.t << "  sums=" << r.sums_tried;
    if (r.k0) std::cout << "  k0(t)=" << *r.k0;
    if (r.k0_plus_k1) std::cout << "  k0(t)+k1(t)=" << *r.k0_plus_k1;
    std::cout << "\n";
  }
  std::cout << "remain=" << info.remain() << "  oracle_calls=" << oracle.calls()
            << "  wall=" << secs << "s\n"
            << (ok ? "key recovery MATCH\n" : "key recovery MISMATCH\n");
  write_report(c, report);
  return ok ? 0 : 1;
}

int run_verify_anf(const Common& c) {
  const ascon::Flavor flavor = c.parsed_flavor();
  anf::VerifyReport rep = anf::verify_all(flavor);

  // degree spot checks: conditions hold -> degree 2; one violation -> cubic
  std::mt19937_64 rng(c.seed);
  {
    bool deg_ok = true, cubic_ok = true;
    for (int trial = 0; trial < 3; ++trial) {
      const int i = int(rng() % 64);
      const uint64_t iv = ascon::CipherParams::make(flavor).iv;
      std::set<int> aux = anf::kAuxOffsets;
      if (ascon::get_bit(iv, ascon::mod64(i + 1)))
        aux.erase(1);
      else if (ascon::get_bit(iv, ascon::mod64(i + 6)))
        aux.erase(6);
      const auto sys = anf::derive_key_conditions(
          anf::extract_cubic_coefficients(i, aux, {}, flavor));
      ascon::MasterKey key{rng(), rng()};
      for (const auto& cond : sys.conditions) {
        const int b =
            ascon::get_bit(key.k0, cond.index) ^ ascon::get_bit(key.k1, cond.index);
        if (b != cond.rhs) key.k1 ^= ascon::word_bit(cond.index);
      }
      deg_ok &= anf::max_cube_degree(key, i, aux, {}, flavor) == 2;
      ascon::MasterKey bad = key;
      bad.k1 ^= ascon::word_bit(sys.conditions[0].index);
      cubic_ok &= anf::max_cube_degree(bad, i, aux, {}, flavor) >= 3;
    }
    rep.add("max cube degree 2 under the key conditions", deg_ok);
    rep.add("cubic term present under a violated condition", cubic_ok);
  }

  json report;
  report["header"] = c.header("verify-anf");
  report["checks"] = json::array();
  for (const auto& chk : rep.checks) {
    std::cout << (chk.pass ? "PASS  " : "FAIL  ") << chk.name;
    if (!chk.pass && !chk.detail.empty()) std::cout << "  [" << chk.detail << "]";
    std::cout << "\n";
    report["checks"].push_back(
        {{"name", chk.name}, {"pass", chk.pass}, {"detail", chk.detail}});
  }
  report["notes"] = json::array(
      {"the published no-tie table prints the box-(i+6) cubic term at offset 61; "
       "the derivation places it at 60 and that is what is checked",
       "published one-bit conditions have rhs 0; the derivation flips indexes "
       "inside the round-constant byte (b(59) for flavor 128)"});
  report["all_pass"] = rep.all_pass();
  write_report(c, report);
  std::cout << (rep.all_pass() ? "verify-anf: all checks passed\n"
                               : "verify-anf: FAILURES\n");
  return rep.all_pass() ? 0 : 1;
}

int run_plan7(const Common& c, const std::string& emit_dir) {
  const ascon::Flavor flavor = c.parsed_flavor();
  const plan::SubsetPlan p = plan::build_plan(flavor);

  std::cout << "subsets: " << p.count(plan::KeySubset::Kind::U) << " U + "
            << p.count(plan::KeySubset::Kind::Uprime) << " U'\n";
  std::cout << "one-bit conditions (b-index, rhs):";
  for (const auto& cond : p.ki0)
    std::cout << " (" << cond.index << "," << cond.rhs << ")";
  std::cout << "\nchains:";
  for (const auto& chain : p.ki_chains) std::cout << " len=" << chain.size();
  std::cout << "\n";
  for (const auto& t : p.ledger.terms)
    std::cout << "  " << t.name << (t.is_count ? " = " : " = 2^") << t.log2
              << (t.note.empty() ? "" : "   (" + t.note + ")") << "\n";
  for (const auto& n : p.ledger.notes) std::cout << "note: " << n << "\n";
  for (const auto& n : p.notes) std::cout << "note: " << n << "\n";

  bool ok;
  if (flavor == ascon::Flavor::Ascon128) {
    ok = std::abs(p.ledger.cube_testing_log2 - 77.21) <= 0.01 &&
         std::abs(p.ledger.remaining_subset_log2 - 103.92) <= 0.01 &&
         std::abs(p.ledger.worst_case_total_log2 - 103.92) <= 0.01 &&
         std::abs(p.ledger.weak_key_total_log2 - 77.00) <= 0.01;
  } else {
    ok = std::abs(p.ledger.remaining_subset_log2 - 103.45) <= 0.01 &&
         std::abs(p.ledger.worst_case_total_log2 - 103.45) <= 0.01;
  }

  if (!emit_dir.empty()) {
    uint64_t emitted = 0;
    std::filesystem::create_directories(emit_dir);
    for (const auto& s : p.subsets) {
      const int case_kind = s.kind == plan::KeySubset::Kind::Uprime ? 2 : 1;
      const size_t menu = s.control_menu.size();
      for (uint64_t bits = 0; bits < (1ull << menu); ++bits) {
        std::set<int> mask;
        for (size_t k = 0; k < menu; ++k)
          if ((bits >> k) & 1) mask.insert(s.control_menu[k]);
        const auto spec = plan::materialize_cube(s.i, mask, case_kind, flavor);
        const std::string name =
            (s.kind == plan::KeySubset::Kind::U ? "U" : "Up") + std::to_string(s.i) +
            "_mask" + std::to_string(bits) + ".json";
        std::ofstream f(std::filesystem::path(emit_dir) / name);
        f << cube::to_json(spec) << "\n";
        ++emitted;
      }
    }
    std::cout << "emitted " << emitted << " cube files to " << emit_dir << "\n";
  }

  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path);
    f << plan::plan_to_json(p) << "\n";
  }
  std::cout << (ok ? "plan7: ledger matches the published totals\n"
                   : "plan7: ledger MISMATCH\n");
  return ok ? 0 : 1;
}

int run_tests(const Common& c, int which, int rounds, int dim, int trials, int keys) {
  const ascon::Flavor flavor = c.parsed_flavor();
  std::mt19937_64 rng(c.seed);

  auto random_cube = [&](std::mt19937_64& r) {
    // dim-1 variables at distinct word-3 positions, the last variable in
    // word 4 sharing the first column.
    cube::CubeSpec spec;
    spec.flavor = flavor;
    spec.rounds = rounds;
    spec.dimension = dim;
    spec.free_policy = cube::FreeBitPolicy::SeededRandom;
    spec.seed = r();
    std::array<int, 64> perm;
    for (int k = 0; k < 64; ++k) perm[size_t(k)] = k;
    std::shuffle(perm.begin(), perm.end(), r);
    for (int v = 0; v + 1 < dim; ++v) spec.placements.push_back({v, 3, perm[size_t(v)]});
    spec.placements.push_back({dim - 1, 4, perm[0]});
    return spec;
  };

  json report;
  report["header"] = c.header("tests");
  report["rounds"] = rounds;
  report["dimension"] = dim;

  if (which == 1) {
    int nonzero = 0;
    for (int trial = 0; trial < trials; ++trial) {
      const cube::CubeSpec spec = random_cube(rng);
      const ascon::MasterKey key{rng(), rng()};
      nonzero += int(cube::cube_sum_parallel(spec, key, c.threads).nonzero());
    }
    std::cout << "test 1: " << nonzero << "/" << trials << " random " << dim
              << "-dimension cubes had a nonzero " << rounds << "-round cube sum\n";
    report["test"] = 1;
    report["trials"] = trials;
    report["nonzero"] = nonzero;
  } else if (which == 2) {
    const cube::CubeSpec spec = random_cube(rng);
    std::array<int, 64> hist{};
    for (int k = 0; k < keys; ++k) {
      const ascon::MasterKey key{rng(), rng()};
      const auto r = cube::cube_sum_parallel(spec, key, c.threads);
      for (int bit = 0; bit < 64; ++bit)
        hist[size_t(bit)] += ascon::get_bit(r.sums.w[0], bit);
    }
    std::cout << "test 2: nonzero cube-sum count per output bit over " << keys
              << " keys\n";
    report["test"] = 2;
    report["keys"] = keys;
    report["histogram"] = hist;
    for (int bit = 0; bit < 64; ++bit)
      std::cout << bit << ":" << double(hist[size_t(bit)]) / keys
                << ((bit % 8 == 7) ? "\n" : "  ");
  } else {
    std::cerr << "--test must be 1 or 2\n";
    return 2;
  }
  write_report(c, report);
  return 0;
}

int run_derive(const Common& c, int i, bool no_aux, std::vector<int> control) {
  const ascon::Flavor flavor = c.parsed_flavor();
  const uint64_t iv = ascon::CipherParams::make(flavor).iv;
  std::set<int> aux;
  if (!no_aux) {
    aux = anf::kAuxOffsets;
    if (ascon::get_bit(iv, ascon::mod64(i + 1)))
      aux.erase(1);
    else if (ascon::get_bit(iv, ascon::mod64(i + 6)))
      aux.erase(6);
  }
  const std::set<int> ctrl(control.begin(), control.end());
  const auto table = anf::extract_cubic_coefficients(i, aux, ctrl, flavor);
  std::cout << anf::table_to_json(table) << "\n";
  const auto sys = anf::derive_key_conditions(table);
  if (sys.satisfiable) {
    std::cout << "conditions:";
    for (const auto& cond : sys.conditions)
      std::cout << " b(" << cond.index << ")=" << cond.rhs;
    std::cout << "\n";
  } else {
    std::cout << "no key satisfies this configuration:";
    for (const auto& issue : sys.issues) std::cout << " " << issue << ";";
    std::cout << "\n";
  }
  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path);
    f << anf::table_to_json(table) << "\n";
  }
  return 0;
}

int run_sum(const Common& c, const std::string& spec_path) {
  std::ifstream f(spec_path);
  if (!f) {
    std::cerr << "cannot open " << spec_path << "\n";
    return 2;
  }
  std::stringstream ss;
  ss << f.rdbuf();
  const cube::CubeSpec spec = cube::spec_from_json(ss.str());
  if (auto v = cube::validate_spec(spec)) {
    std::cerr << "invalid spec: " << v->message << "\n";
    return 2;
  }
  const auto r = cube::cube_sum_parallel(spec, c.key(), c.threads);
  std::cout << cube::result_to_json(r) << "\n";
  if (!c.out_path.empty()) {
    std::ofstream out(c.out_path);
    out << cube::result_to_json(r) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional-cube key-recovery workbench for round-reduced Ascon"};
  app.require_subcommand(1);
  app.set_config("--config");

  Common c_attack, c_verify, c_plan, c_tests, c_sum;
  int rounds = 5;
  std::vector<int> ts;
  int budget_bits = 30;
  auto* attack_cmd = app.add_subcommand("attack", "run the 5/6-round key recovery");
  add_common(attack_cmd, c_attack);
  attack_cmd->add_option("--rounds", rounds, "5 or 6");
  attack_cmd->add_option("--t", ts, "restrict to these t positions (budgeted run)")
      ->delimiter(',');
  attack_cmd->add_option("--budget-log2", budget_bits,
                         "exhaustive-completion budget (bits)");
  std::string free_bits = "random";
  attack_cmd->add_option("--free-bits", free_bits,
                         "free nonce bits: random (seeded) or zero")
      ->check(CLI::IsMember({"random", "zero"}));

  auto* verify_cmd = app.add_subcommand("verify-anf", "check the symbolic derivations");
  add_common(verify_cmd, c_verify, false);

  std::string emit_dir;
  auto* plan_cmd = app.add_subcommand("plan7", "build the 7-round subset plan");
  add_common(plan_cmd, c_plan, false);
  plan_cmd->add_option("--emit-cubes", emit_dir, "write every cube spec file here");

  int which_test = 1, t_rounds = 5, t_dim = 17, t_trials = 1000, t_keys = 200;
  auto* tests_cmd = app.add_subcommand("tests", "randomized rationality tests");
  add_common(tests_cmd, c_tests, false);
  tests_cmd->add_option("--test", which_test, "1 or 2");
  tests_cmd->add_option("--rounds", t_rounds, "reduced rounds");
  tests_cmd->add_option("--dim", t_dim, "cube dimension");
  tests_cmd->add_option("--trials", t_trials, "test 1: number of random cubes");
  tests_cmd->add_option("--keys", t_keys, "test 2: number of random keys");

  std::string spec_path;
  auto* sum_cmd = app.add_subcommand("sum", "evaluate one cube spec file");
  add_common(sum_cmd, c_sum);
  sum_cmd->add_option("--spec", spec_path, "cube spec (JSON)")->required();

  Common c_derive;
  int derive_i = 0;
  bool derive_no_aux = false;
  std::vector<int> derive_control;
  auto* derive_cmd = app.add_subcommand(
      "derive", "cubic-coefficient table and key conditions at one position");
  add_common(derive_cmd, c_derive, false);
  derive_cmd->add_option("--i", derive_i, "cube position (v64 column)")->required();
  derive_cmd->add_flag("--no-aux", derive_no_aux, "omit the auxiliary ties");
  derive_cmd->add_option("--control", derive_control, "control offsets to raise")
      ->delimiter(',');

  std::string dump_dir = ".";
  auto* dump_cmd = app.add_subcommand("dump-params", "write the parameter tables");
  dump_cmd->add_option("--dir", dump_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (attack_cmd->parsed())
      return run_attack(c_attack, rounds, ts, budget_bits, free_bits);
    if (verify_cmd->parsed()) return run_verify_anf(c_verify);
    if (plan_cmd->parsed()) return run_plan7(c_plan, emit_dir);
    if (tests_cmd->parsed())
      return run_tests(c_tests, which_test, t_rounds, t_dim, t_trials, t_keys);
    if (sum_cmd->parsed()) return run_sum(c_sum, spec_path);
    if (derive_cmd->parsed())
      return run_derive(c_derive, derive_i, derive_no_aux, derive_control);
    if (dump_cmd->parsed()) {
      std::filesystem::create_directories(dump_dir);
      for (int r : {5, 6}) {
        const auto path =
            std::filesystem::path(dump_dir) / ("attack" + std::to_string(r) + ".json");
        std::ofstream f(path);
        f << attack::embedded_params_json(r);
        std::cout << "wrote " << path.string() << "\n";
      }
      return 0;
    }
  } catch (const anf::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
