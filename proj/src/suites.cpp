#include "qgs/suites.hpp"

#include "qgs/manip.hpp"
#include "qgs/parallel.hpp"
#include "qgs/random.hpp"
#include "qgs/scf.hpp"
#include "qgs/ternary.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

namespace qgs {

namespace {

using json = nlohmann::ordered_json;

struct Verdict {
  bool pass = true;
  json detail;
};

Verdict fail(json detail) { return {false, std::move(detail)}; }

std::string rstr(const Rational& r) { return numerator_string(r) + "/" + denominator_string(r); }

Options exact_options() {
  Options o;
  o.mode = Mode::Exact;
  return o;
}

std::uint64_t trials_of(const std::string& name, const SuiteConfig& cfg) {
  return cfg.trials ? cfg.trials : suite_default_trials(name);
}

std::vector<int> sizes(const SuiteConfig& cfg, std::vector<int> fallback) {
  return cfg.ns.empty() ? fallback : cfg.ns;
}

// --- instance builders -------------------------------------------------

json scf_instance(const std::string& spec, int n) { return json{{"scf", spec}, {"n", n}}; }

Scf scf_of(const json& inst) {
  return zoo_make_spec(inst.at("scf").get<std::string>(), inst.at("n").get<int>(), 3);
}

std::vector<std::string> zoo_specs(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("dictatorship:" + std::to_string(i));
  for (int i = 0; i < n; ++i) out.push_back("anti_dictatorship:" + std::to_string(i));
  for (int a = 0; a < 3; ++a) out.push_back("constant:" + std::to_string(a));
  out.insert(out.end(), {"plurality", "borda", "pairwise_majority_fallback"});
  return out;
}

// Zoo at every size plus random tables; n = 4 gets a tenth of the trials
// (at least 20) unless sizes are given explicitly.
std::vector<json> scf_corpus(const SuiteConfig& cfg, std::uint64_t trials, std::vector<int> fallback) {
  std::vector<json> out;
  for (int n : sizes(cfg, fallback)) {
    for (const auto& spec : zoo_specs(n)) out.push_back(scf_instance(spec, n));
    const std::uint64_t count =
        cfg.ns.empty() && n >= 4 ? std::max<std::uint64_t>(20, trials / 10) : trials;
    for (std::uint64_t k = 0; k < count; ++k) {
      const std::uint64_t s = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), k);
      out.push_back(scf_instance("random_table:" + std::to_string(s), n));
    }
  }
  return out;
}

// Majority, dictators, anti-dictators, the reductions of the zoo, and
// random IIA G; m = 3.
std::vector<json> gswf_corpus(const SuiteConfig& cfg, std::uint64_t trials, std::vector<int> fallback) {
  std::vector<json> out;
  for (int n : sizes(cfg, fallback)) {
    out.push_back(gswf_to_json(neutral_tensor(majority_table(n), 3).gswf()));
    for (int i = 0; i < n; ++i) {
      out.push_back(gswf_to_json(dictator_gswf(n, 3, i)));
      TrMember anti{TrMember::Kind::AntiDictator, i, 0, {}};
      out.push_back(gswf_to_json(anti.gswf(n)));
    }
    for (const auto& spec : zoo_specs(n))
      out.push_back(gswf_to_json(gswf_from_scf(zoo_make_spec(spec, n, 3))));
    Rng rng(derive_seed(cfg.seed, 0x6000 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t k = 0; k < trials; ++k) out.push_back(gswf_to_json(random_gswf(n, 3, rng)));
  }
  return out;
}

// --- checks ------------------------------------------------------------

Verdict check_first_reduction(const json& inst, const SuiteConfig&) {
  const Scf f = materialize(scf_of(inst));
  const int n = f.voters();
  const auto mi = manipulation_powers(f, exact_options());
  Rational total = 0;
  for (const auto& r : mi) total += r.value;
  const BigInt scale = BigInt(6) * pow3(n) * pow2(n);
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    const Rational m = mab_exact(column_stats(f, a, b));
    if (m > 6 * total)
      return fail({{"pair", {a, b}}, {"mab", rstr(m)}, {"six_sum_mi", rstr(6 * total)}});
    // Per voter: 6 * 3^n * 2^n * M_i >= sum over columns of |d_i A| + |d_i B|.
    std::vector<std::uint64_t> border(n, 0);
    for (std::uint64_t z = 0; z < pow2(n); ++z) {
      const auto [sa, sb] = sets_ab(f, a, b, z);
      for (int i = 0; i < n; ++i) border[i] += edge_border(sa, i) + edge_border(sb, i);
    }
    for (int i = 0; i < n; ++i)
      if (mi[i].value * scale < border[i])
        return fail({{"pair", {a, b}}, {"voter", i}, {"mi", rstr(mi[i].value)},
                     {"border_sum", border[i]}});
  }
  return {};
}

Verdict check_cauchy(const json& inst, const SuiteConfig&) {
  const Scf f = materialize(scf_of(inst));
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    const auto ab = column_stats(f, a, b);
    const auto ba = column_stats(f, b, a);
    const Rational m = mab_exact(ab);
    const Rational nn = nab_exact(ab);
    if (m < nn * nn) return fail({{"pair", {a, b}}, {"mab", rstr(m)}, {"nab", rstr(nn)}});
    if (m != mab_exact(ba) || nn != nab_exact(ba))
      return fail({{"pair", {a, b}}, {"asymmetric", true}});
  }
  return {};
}

std::vector<std::uint64_t> points_of(const json& j) { return j.get<std::vector<std::uint64_t>>(); }

std::pair<TernarySet, TernarySet> border_sets(const json& inst) {
  const int n = inst.at("n").get<int>();
  if (inst.contains("a"))
    return {TernarySet::from_points(n, points_of(inst.at("a"))),
            TernarySet::from_points(n, points_of(inst.at("b")))};
  if (inst.contains("scf")) {
    const auto pair = inst.at("pair").get<std::vector<int>>();
    return sets_ab(scf_of(inst), static_cast<Alt>(pair.at(0)), static_cast<Alt>(pair.at(1)),
                   inst.at("column").get<std::uint64_t>());
  }
  Rng rng(inst.at("seed").get<std::uint64_t>());
  return random_disjoint_pair(n, rng);
}

Verdict check_border(const json& inst, const SuiteConfig&) {
  const auto [a, b] = border_sets(inst);
  const BorderReport r = check_border_inequality(a, b);
  if (r.holds) return {};
  return fail({{"a", a.points()}, {"b", b.points()}, {"border_a", r.border_a},
               {"border_b", r.border_b}, {"size_a", r.size_a}, {"size_b", r.size_b}});
}

Verdict check_shifting(const json& inst, const SuiteConfig&) {
  const int n = inst.at("n").get<int>();
  TernarySet s, t;
  if (inst.contains("set")) {
    s = TernarySet::from_points(n, points_of(inst.at("set")));
    t = TernarySet::from_points(n, points_of(inst.at("other")));
  } else {
    Rng rng(inst.at("seed").get<std::uint64_t>());
    s = random_ternary_set(n, rng);
    t = random_ternary_set(n, rng);
  }
  auto bad = [&](const char* what) {
    return fail({{"property", what}, {"set", s.points()}, {"other", t.points()}});
  };
  const TernarySet shifted = shift_monotone(s);
  if (shifted.size() != s.size()) return bad("cardinality");
  if (!is_monotone(shifted)) return bad("monotone");
  const EdgeBorder before = edge_borders(s);
  // Border non-increase through every intermediate step, every direction.
  TernarySet cur = s;
  for (int i = 0; i < n; ++i) {
    const TernarySet next = shift_step(cur, i);
    for (int j = 0; j < n; ++j)
      if (edge_border(next, j) > edge_border(cur, j)) return bad("border_increase");
    cur = next;
  }
  std::uint64_t fresh = 0;
  for (auto p : shifted.points()) fresh += !s.contains(p);
  if (fresh > before.total()) return bad("new_elements");
  if (!check_harris(shifted, shift_monotone(t)).holds) return bad("harris");
  return {};
}

Verdict check_chain(const json& inst, const SuiteConfig& cfg) {
  const Scf f = scf_of(inst);
  Options o = exact_options();
  o.budget = cfg.opts.budget;
  const ChainReport r = check_reduction_chain(f, 0, o);
  if (r.holds()) return {};
  return fail({{"nt", rstr(r.nt)}, {"nab_sum", rstr(r.nab_sum)}, {"eps1", rstr(r.eps1)},
               {"eps2", rstr(r.eps2)}, {"dist_tr3", rstr(r.dist_tr3)},
               {"nt_le_nab_sum", r.nt_le_nab_sum}, {"nab_le_sqrt_mab", r.nab_le_sqrt_mab},
               {"nab_sum_le_bound", r.nab_sum_le_bound}, {"nt_le_bound", r.nt_le_bound},
               {"dist_ge_bound", r.dist_ge_bound}});
}

Verdict check_identity(const json& inst, const SuiteConfig& cfg) {
  const BoolTable g = table_from_string(inst.at("g").get<std::string>());
  Options o = cfg.opts;
  o.workers = 1;
  o.seed = inst.value("seed", std::uint64_t{0});
  const IdentityReport r = check_identities(g, o);
  if (r.holds()) return {};
  return fail({{"gcw3", r.gcw3.as_double()}, {"gcw4", r.gcw4.as_double()},
               {"gcw5", r.gcw5.as_double()}, {"gcw6", r.gcw6.as_double()},
               {"four_holds", r.four_holds}, {"four_z", r.four_z}, {"five_holds", r.five_holds},
               {"five_z", r.five_z}, {"composition_holds", r.composition.holds},
               {"composition_z", r.composition.z_score}});
}

// Cycle count read straight from the rankings, without GswfIia::outcome.
std::uint64_t brute_cycle_count(const GswfIia& g) {
  const int n = g.voters();
  const std::uint64_t total = profile_count(n, 3);
  std::uint64_t cycles = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Profile x = profile_from_index(idx, n, 3);
    int beats[3][3] = {};
    for (Alt a = 0; a < 3; ++a)
      for (Alt b = 0; b < 3; ++b) {
        if (a == b) continue;
        std::uint64_t column = 0;
        for (int v = 0; v < n; ++v)
          if (x.voter(v).prefers(a, b)) column |= std::uint64_t{1} << v;
        beats[a][b] = g.prefers(a, b, column);
      }
    bool cyclic = true;
    for (int a = 0; a < 3; ++a) {
      int wins = 0;
      for (int b = 0; b < 3; ++b) wins += beats[a][b];
      cyclic = cyclic && wins == 1;
    }
    cycles += cyclic;
  }
  return cycles;
}

Verdict check_condorcet(const json& inst, const SuiteConfig&) {
  const GswfIia g = gswf_from_json(inst);
  const Options o = exact_options();
  const Rational t = nt(g, o).value;
  const Rational none = ngcw(g, o).value;
  const Rational brute = ratio(brute_cycle_count(g), profile_count(g.voters(), 3));
  if (t == none && t == brute) return {};
  return fail({{"nt", rstr(t)}, {"ngcw", rstr(none)}, {"brute", rstr(brute)}});
}

Verdict check_converse_instance(const json& inst, const SuiteConfig&) {
  const ConverseReport r = check_converse(gswf_from_json(inst), 0, exact_options());
  if (r.holds) return {};
  return fail({{"max_mab", rstr(r.max_mab)}, {"ngcw", rstr(r.ngcw)}});
}

Verdict check_composition_instance(const json& inst, const SuiteConfig& cfg) {
  const GswfIia g = gswf_from_json(inst);
  Options o = cfg.opts;
  o.workers = 1;
  o.seed = inst.value("seed", std::uint64_t{0});
  const int m1 = inst.value("m1", g.alternatives() / 2);
  const CompositionReport r = check_composition(g, m1, o);
  if (r.holds) return {};
  return fail({{"exact", r.exact}, {"joint", r.joint.as_double()}, {"first", r.first.as_double()},
               {"second", r.second.as_double()}, {"z", r.z_score}});
}

Verdict check_tr3(const json& inst, const SuiteConfig&) {
  const GswfIia g = gswf_from_json(inst);
  const int n = g.voters();
  const Tr3Distance d = dist_tr3(g, exact_options());
  std::uint64_t best = disagreement_count(g, dictator_gswf(n, 3, 0));
  for (int i = 0; i < n; ++i) {
    TrMember dict{TrMember::Kind::Dictator, i, 0, {}};
    TrMember anti{TrMember::Kind::AntiDictator, i, 0, {}};
    best = std::min({best, disagreement_count(g, dict.gswf(n)), disagreement_count(g, anti.gswf(n))});
  }
  const std::uint64_t tables = std::uint64_t{1} << pow2(n);
  for (auto kind : {TrMember::Kind::TopFixed, TrMember::Kind::BottomFixed})
    for (Alt a = 0; a < 3; ++a)
      for (std::uint64_t code = 0; code < tables; ++code) {
        TrMember h{kind, 0, a, BoolTable(pow2(n))};
        for (std::uint64_t z = 0; z < pow2(n); ++z) h.h[z] = (code >> z) & 1U;
        best = std::min(best, disagreement_count(g, h.gswf(n)));
      }
  const Rational brute = ratio(best, profile_count(n, 3));
  const Rational witness = ratio(disagreement_count(g, d.witness.gswf(n)), profile_count(n, 3));
  if (d.triple.value == brute && witness == brute) return {};
  return fail({{"structured", rstr(d.triple.value)}, {"brute", rstr(brute)},
               {"witness", d.witness.describe()}, {"witness_distance", rstr(witness)}});
}

// --- generators --------------------------------------------------------

std::vector<json> gen_first_reduction(const SuiteConfig& cfg) {
  return scf_corpus(cfg, trials_of("first-reduction", cfg), {2, 3, 4});
}

std::vector<json> gen_cauchy(const SuiteConfig& cfg) {
  return scf_corpus(cfg, trials_of("cauchy", cfg), {2, 3, 4});
}

std::vector<json> gen_border(const SuiteConfig& cfg) {
  std::vector<json> out;
  const auto ns = sizes(cfg, {1, 2, 3, 4, 5, 6});
  const std::uint64_t trials = trials_of("border", cfg);
  for (std::uint64_t k = 0; k < trials; ++k)
    out.push_back({{"n", ns[k % ns.size()]}, {"seed", derive_seed(cfg.seed, k)}});
  for (int n : ns) {
    if (n > 4) continue;
    for (const auto& spec : zoo_specs(n))
      for (int p = 0; p < 3; ++p) {
        const auto [a, b] = pair_at(3, p);
        for (std::uint64_t z = 0; z < pow2(n); ++z)
          out.push_back({{"scf", spec}, {"n", n}, {"pair", {a, b}}, {"column", z}});
      }
  }
  return out;
}

std::vector<json> gen_shifting(const SuiteConfig& cfg) {
  std::vector<json> out;
  const auto ns = sizes(cfg, {1, 2, 3, 4, 5, 6});
  const std::uint64_t trials = trials_of("shifting", cfg);
  for (std::uint64_t k = 0; k < trials; ++k)
    out.push_back({{"n", ns[k % ns.size()]}, {"seed", derive_seed(cfg.seed, k)}});
  return out;
}

std::vector<json> gen_chain(const SuiteConfig& cfg) {
  return scf_corpus(cfg, trials_of("reduction-chain", cfg), {3});
}

std::vector<json> gen_identity(const SuiteConfig& cfg) {
  std::vector<json> out;
  auto add = [&](const BoolTable& g) {
    out.push_back({{"g", table_to_string(g)}, {"seed", derive_seed(cfg.seed, out.size())}});
  };
  add(dictator_table(1, 0));
  for (int n : sizes(cfg, {3})) {
    add(majority_table(n));
    Rng rng(derive_seed(cfg.seed, 0x1d00 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t k = 0; k < trials_of("arrow-identity", cfg); ++k) add(random_odd_table(n, rng));
  }
  return out;
}

std::vector<json> gen_condorcet(const SuiteConfig& cfg) {
  return gswf_corpus(cfg, trials_of("condorcet", cfg), {3});
}

std::vector<json> gen_converse(const SuiteConfig& cfg) {
  return gswf_corpus(cfg, trials_of("converse", cfg), {3});
}

std::vector<json> gen_composition(const SuiteConfig& cfg) {
  std::vector<json> out;
  const std::uint64_t trials = trials_of("composition", cfg);
  for (int n : sizes(cfg, {2})) {
    auto add = [&](const GswfIia& g) {
      json j = gswf_to_json(g);
      j["m1"] = 3;
      j["seed"] = derive_seed(cfg.seed, out.size());
      out.push_back(std::move(j));
    };
    add(neutral_tensor(majority_table(n), 6).gswf());
    for (int i = 0; i < n; ++i) add(dictator_gswf(n, 6, i));
    Rng rng(derive_seed(cfg.seed, 0xc000 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t k = 0; k < trials; ++k) {
      add(random_gswf(n, 6, rng));
      add(neutral_tensor(random_odd_table(n, rng), 6).gswf());
    }
  }
  return out;
}

std::vector<json> gen_tr3(const SuiteConfig& cfg) {
  std::vector<json> out;
  for (int n : sizes(cfg, {2, 3})) {
    out.push_back(gswf_to_json(neutral_tensor(majority_table(n), 3).gswf()));
    Rng rng(derive_seed(cfg.seed, 0x7300 + static_cast<std::uint64_t>(n)));
    for (std::uint64_t k = 0; k < trials_of("tr3-search", cfg); ++k)
      out.push_back(gswf_to_json(random_gswf(n, 3, rng)));
  }
  return out;
}

struct SuiteDef {
  std::uint64_t default_trials;
  std::function<std::vector<json>(const SuiteConfig&)> generate;
  std::function<Verdict(const json&, const SuiteConfig&)> check;
};

const std::map<std::string, SuiteDef>& registry() {
  static const std::map<std::string, SuiteDef> r = {
      {"first-reduction", {200, gen_first_reduction, check_first_reduction}},
      {"border", {10000, gen_border, check_border}},
      {"shifting", {10000, gen_shifting, check_shifting}},
      {"cauchy", {200, gen_cauchy, check_cauchy}},
      {"reduction-chain", {200, gen_chain, check_chain}},
      {"arrow-identity", {20, gen_identity, check_identity}},
      {"condorcet", {50, gen_condorcet, check_condorcet}},
      {"converse", {50, gen_converse, check_converse_instance}},
      {"composition", {20, gen_composition, check_composition_instance}},
      {"tr3-search", {20, gen_tr3, check_tr3}},
  };
  return r;
}

const SuiteDef& lookup(const std::string& name) {
  const auto& r = registry();
  const auto it = r.find(name);
  if (it == r.end()) throw DomainError("unknown suite: " + name);
  return it->second;
}

}  // namespace

json SuiteReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["instances"] = instances;
  j["passed"] = passed;
  j["counterexample"] = counterexample ? *counterexample : json(nullptr);
  j["wall_seconds"] = wall_seconds;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

std::uint64_t suite_default_trials(const std::string& name) { return lookup(name).default_trials; }

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  const SuiteDef& def = lookup(name);
  const auto start = std::chrono::steady_clock::now();
  std::vector<json> instances;
  if (cfg.instance) {
    json inst = *cfg.instance;
    inst.erase("suite");
    inst.erase("detail");
    instances.push_back(std::move(inst));
  } else {
    instances = def.generate(cfg);
  }

  struct Partial {
    std::uint64_t passed = 0;
    std::optional<json> counterexample;
  };
  auto partial = map_chunks<Partial>(instances.size(), 1, cfg.opts.workers, [&](const ChunkRange& r) {
    Partial p;
    for (std::uint64_t k = r.begin; k < r.end; ++k) {
      Verdict v;
      try {
        v = def.check(instances[k], cfg);
      } catch (const BudgetError&) {
        throw;
      } catch (const std::out_of_range& e) {
        throw DomainError(std::string("malformed instance: ") + e.what());
      } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed instance: ") + e.what());
      }
      if (v.pass) {
        ++p.passed;
      } else if (!p.counterexample) {
        json c;
        c["suite"] = name;
        for (auto it = instances[k].begin(); it != instances[k].end(); ++it) c[it.key()] = it.value();
        c["detail"] = std::move(v.detail);
        p.counterexample = std::move(c);
      }
    }
    return p;
  });

  SuiteReport rep;
  rep.suite = name;
  rep.instances = instances.size();
  for (auto& p : partial) {
    rep.passed += p.passed;
    if (!rep.counterexample && p.counterexample) rep.counterexample = std::move(p.counterexample);
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::string table_to_string(const BoolTable& t) {
  std::string s(t.size(), '0');
  for (std::size_t z = 0; z < t.size(); ++z) s[z] = t[z] ? '1' : '0';
  return s;
}

BoolTable table_from_string(const std::string& s) {
  BoolTable t(s.size());
  for (std::size_t z = 0; z < s.size(); ++z) {
    if (s[z] != '0' && s[z] != '1') throw DomainError("table strings hold only '0' and '1'");
    t[z] = s[z] == '1';
  }
  bool_table_voters(t);
  return t;
}

nlohmann::ordered_json gswf_to_json(const GswfIia& g) {
  json j;
  j["n"] = g.voters();
  j["m"] = g.alternatives();
  j["tables"] = json::array();
  for (const auto& t : g.tables()) j["tables"].push_back(table_to_string(t));
  return j;
}

GswfIia gswf_from_json(const nlohmann::ordered_json& j) {
  std::vector<BoolTable> tables;
  for (const auto& t : j.at("tables")) tables.push_back(table_from_string(t.get<std::string>()));
  return GswfIia(j.at("n").get<int>(), j.at("m").get<int>(), std::move(tables));
}

}  // namespace qgs
