#include "qgs/commands.hpp"

#include "qgs/fileio.hpp"
#include "qgs/manip.hpp"

#include <charconv>
#include <filesystem>

namespace qgs {

namespace {

std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw DomainError("bad parameter for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

void check_shape(int got_n, int got_m, int n, int m, const std::string& source) {
  if ((n > 0 && n != got_n) || (m > 0 && m != got_m))
    throw DomainError(source + ": file holds n=" + std::to_string(got_n) + ", m=" +
                      std::to_string(got_m));
}

MetricReport with_argmin(MetricReport r, int argmin) {
  r.indices = {argmin};
  return r;
}

}  // namespace

Scf open_scf(const std::string& source, int n, int m) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    Scf f = load_scf(source);
    check_shape(f.voters(), f.alternatives(), n, m, source);
    return f;
  }
  if (n <= 0) throw DomainError("--n is required for a named rule");
  return zoo_make_spec(source, n, m > 0 ? m : 3);
}

GswfIia gswf_make_spec(std::string_view spec, int n, int m) {
  if (n <= 0) throw DomainError("--n is required for a named GSWF");
  if (m <= 0) m = 3;
  std::string_view name = spec;
  std::string_view param;
  if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    param = spec.substr(colon + 1);
  }
  if (name == "reduce") return gswf_from_scf(zoo_make_spec(param, n, m));
  if (name == "majority") return neutral_tensor(majority_table(n), m).gswf();
  if (name == "parity") return neutral_tensor(parity_table(n), m).gswf();
  if (name == "dictator") return dictator_gswf(n, m, static_cast<int>(parse_u64(param, name)));
  if (name == "anti_dictator") {
    const BoolTable d = dictator_table(n, static_cast<int>(parse_u64(param, name)));
    BoolTable anti(d.size());
    for (std::size_t z = 0; z < d.size(); ++z) anti[z] = 1 - d[z];
    return neutral_tensor(anti, m).gswf();
  }
  if (name == "random" || name == "random_odd") {
    Rng rng(derive_seed(parse_u64(param, name), 0x65f));
    if (name == "random") return random_gswf(n, m, rng);
    return neutral_tensor(random_odd_table(n, rng), m).gswf();
  }
  throw DomainError("unknown GSWF: " + std::string(spec));
}

GswfIia open_gswf(const std::string& source, int n, int m) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    GswfIia g = load_gswf(source);
    check_shape(g.voters(), g.alternatives(), n, m, source);
    return g;
  }
  return gswf_make_spec(source, n, m);
}

Report metrics_report(const Scf& source, const Options& opts) {
  const Scf f = materialize_if_small(source, opts);
  const int n = f.voters();
  const int m = f.alternatives();
  Report r;
  r.command = "metrics";
  r.info = {{"source", f.name()}, {"n", std::to_string(n)}, {"m", std::to_string(m)}};

  r.metrics = manipulation_powers(f, opts);
  r.metrics.push_back(manipulation_power_total(f, opts));
  if (m == 3) {
    for (int p = 0; p < 3; ++p) {
      const auto [a, b] = pair_at(3, p);
      r.metrics.push_back(mab(f, a, b, opts));
      r.metrics.push_back(nab(f, a, b, opts));
    }
  }
  const auto dict = dist_to_dictatorship(f, opts);
  const auto anti = dist_to_antidictatorship(f, opts);
  const auto range = range_min_prob(f, opts);
  r.metrics.push_back(with_argmin(dict.value, dict.argmin));
  r.metrics.push_back(with_argmin(anti.value, anti.argmin));
  r.metrics.push_back(with_argmin(range.value, range.argmin));
  const SymmetryCheck neutral = is_neutral(f, opts);
  const SymmetryCheck anonymous = is_anonymous(f, opts);
  r.metrics.push_back(flag_metric("is_neutral", neutral.holds));
  r.metrics.push_back(flag_metric("is_anonymous", anonymous.holds));
  r.info.emplace_back("symmetry_checks", neutral.exhaustive && anonymous.exhaustive ? "exhaustive" : "sampled");
  return r;
}

Report gswf_report(const GswfIia& g, const Options& opts) {
  const int m = g.alternatives();
  Report r;
  r.command = "metrics";
  r.info = {{"source", "gswf"}, {"n", std::to_string(g.voters())}, {"m", std::to_string(m)}};
  if (m == 3) r.metrics.push_back(nt(g, opts));
  r.metrics.push_back(ngcw(g, opts));
  r.metrics.push_back(gcw(g, opts));
  if (m == 3) {
    const Tr3Distance d = dist_tr3(g, opts);
    r.metrics.push_back(d.triple);
    r.metrics.push_back(d.per_bit);
    r.info.emplace_back("tr3_witness", d.witness.describe());
  }
  for (int p = 0; p < pair_count(m); ++p) {
    const auto [a, b] = pair_at(m, p);
    const Dict2Distance d = dist_dict2(g.table(p));
    r.metrics.push_back(MetricReport::make_exact("dist_dict2", {a, b}, d.fraction));
  }
  r.metrics.push_back(flag_metric("is_neutral", is_neutral(g)));
  return r;
}

ReduceResult reduce_report(const Scf& f, int tie_voter, const Options& opts) {
  if (f.alternatives() != 3) throw UnsupportedError("reduce requires m = 3");
  ReduceResult out;
  out.g = gswf_from_scf(f, tie_voter, opts.workers);
  out.report = gswf_report(out.g, opts);
  out.report.command = "reduce";
  out.report.info[0].second = f.name();
  out.report.info.emplace_back("tie_voter", std::to_string(tie_voter));
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    const BoolTable& t = out.g.table(p);
    std::uint64_t ones = 0;
    for (auto v : t) ones += v;
    out.report.metrics.push_back(MetricReport::make_exact("table_ones", {a, b}, ratio(ones, t.size())));
  }
  if (opts.mode != Mode::Sampled && within_budget(f.voters(), 3, opts.budget)) {
    const ChainReport c = check_reduction_chain(f, tie_voter, opts);
    out.chain_checked = true;
    out.chain_holds = c.holds();
    auto& ms = out.report.metrics;
    ms.push_back(MetricReport::make_exact("eps1", {}, c.eps1));
    ms.push_back(MetricReport::make_exact("eps2", {}, c.eps2));
    ms.push_back(MetricReport::make_exact("nab_sum", {}, c.nab_sum));
    ms.push_back(flag_metric("nt_le_nab_sum", c.nt_le_nab_sum));
    ms.push_back(flag_metric("nab_le_sqrt_mab", c.nab_le_sqrt_mab));
    ms.push_back(flag_metric("nab_sum_le_3sqrt_eps1", c.nab_sum_le_bound));
    ms.push_back(flag_metric("nt_le_3sqrt_eps1", c.nt_le_bound));
    ms.push_back(flag_metric("dist_ge_eps2_minus_3sqrt_eps1", c.dist_ge_bound));
    ms.push_back(flag_metric("chain_holds", c.holds()));
    out.report.info.emplace_back("chain", c.holds() ? "pass" : "fail");
  } else {
    out.report.info.emplace_back("chain", opts.mode == Mode::Sampled
                                              ? "skipped: sampled mode"
                                              : "skipped: profile space beyond the exact budget");
  }
  return out;
}

}  // namespace qgs
