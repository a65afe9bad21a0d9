// qgs: metrics, reductions, verification suites and table generation.
// Exit status: 0 pass, 1 property violation, 2 usage or I/O error.

#include "qgs/qgs.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Failure {
  std::string message;
};

void check(qgs_status s) {
  if (s != QGS_OK) {
    std::string msg = std::string(qgs_status_name(s)) + ": " + qgs_last_error();
    throw Failure{msg};
  }
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ScfPtr = std::unique_ptr<qgs_scf, Deleter<qgs_scf, qgs_scf_free>>;
using GswfPtr = std::unique_ptr<qgs_gswf, Deleter<qgs_gswf, qgs_gswf_free>>;
using ReportPtr = std::unique_ptr<qgs_report, Deleter<qgs_report, qgs_report_free>>;
using SuitePtr = std::unique_ptr<qgs_suite_report, Deleter<qgs_suite_report, qgs_suite_report_free>>;

std::string take(char* s) {
  std::string out(s);
  qgs_string_free(s);
  return out;
}

struct Common {
  std::string scf;
  std::string g;
  int n = 0;
  int m = 0;
  bool exact = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string format = "json";
  std::string out;

  qgs_options options(bool sampling_mode = true) const {
    qgs_options o;
    qgs_options_init(&o);
    if (exact) o.mode = QGS_MODE_EXACT;
    if (samples) {
      o.samples = *samples;
      if (sampling_mode) o.mode = QGS_MODE_SAMPLED;
    }
    if (seed) o.seed = *seed;
    o.workers = workers;
    return o;
  }
};

void add_run_flags(CLI::App* cmd, Common& c) {
  auto* exact = cmd->add_flag("--exact", c.exact, "Exact enumeration (fails beyond the budget)");
  auto* samples = cmd->add_option("--samples", c.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  exact->excludes(samples);
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Failure{"cannot write " + path};
}

std::string render(const qgs_report* r, const std::string& format) {
  char* s = nullptr;
  check(qgs_report_render(r, format == "csv" ? QGS_FORMAT_CSV : QGS_FORMAT_JSON, &s));
  return take(s);
}

// "random_table" alone takes its seed from --seed.
std::string with_seed(const std::string& spec, const std::vector<std::string>& seeded,
                      const std::optional<std::uint64_t>& seed) {
  for (const auto& name : seeded)
    if (spec == name) {
      if (!seed) throw Failure{spec + " needs --seed"};
      return spec + ":" + std::to_string(*seed);
    }
  return spec;
}

void require_source(const Common& c) {
  if (c.scf.empty() && c.g.empty()) throw Failure{"one of --scf or --g is required"};
}

int run_metrics(const Common& c) {
  require_source(c);
  const qgs_options o = c.options();
  qgs_report* raw = nullptr;
  if (!c.scf.empty()) {
    qgs_scf* f = nullptr;
    check(qgs_scf_open(with_seed(c.scf, {"random_table"}, c.seed).c_str(), c.n, c.m, &f));
    ScfPtr hold(f);
    check(qgs_metrics(f, &o, &raw));
  } else {
    qgs_gswf* g = nullptr;
    check(qgs_gswf_open(with_seed(c.g, {"random", "random_odd"}, c.seed).c_str(), c.n, c.m, &g));
    GswfPtr hold(g);
    check(qgs_gswf_metrics(g, &o, &raw));
  }
  ReportPtr report(raw);
  emit(render(report.get(), c.format), c.out);
  return kPass;
}

int run_reduce(const Common& c, int tie_voter, const std::string& gswf_out) {
  const qgs_options o = c.options();
  qgs_scf* f = nullptr;
  check(qgs_scf_open(with_seed(c.scf, {"random_table"}, c.seed).c_str(), c.n, c.m, &f));
  ScfPtr hold(f);
  qgs_gswf* g = nullptr;
  qgs_report* raw = nullptr;
  int chain = -1;
  check(qgs_reduce(f, tie_voter, &o, &g, &raw, &chain));
  GswfPtr ghold(g);
  ReportPtr report(raw);
  check(qgs_gswf_save(g, gswf_out.c_str()));
  emit(render(report.get(), c.format), c.out);
  return chain == 0 ? kViolation : kPass;
}

int run_verify(const Common& c, std::string suite, std::uint64_t trials, const std::vector<int>& ns,
               const std::string& instance_path) {
  std::string instance;
  if (!instance_path.empty()) {
    std::ifstream in(instance_path);
    if (!in) throw Failure{"cannot read " + instance_path};
    std::stringstream buf;
    buf << in.rdbuf();
    instance = buf.str();
    if (suite.empty()) {
      const auto j = nlohmann::json::parse(instance, nullptr, false);
      if (j.is_discarded()) throw Failure{instance_path + ": not valid JSON"};
      if (j.is_object() && j.contains("suite") && j["suite"].is_string()) suite = j["suite"].get<std::string>();
    }
  }
  if (suite.empty()) throw Failure{"--suite is required"};
  const qgs_options o = c.options(false);
  qgs_suite_report* raw = nullptr;
  check(qgs_verify(suite.c_str(), trials, c.seed.value_or(0), ns.data(), ns.size(), &o,
                   instance.empty() ? nullptr : instance.c_str(), &raw));
  SuitePtr report(raw);
  std::uint64_t total = 0;
  std::uint64_t passed = 0;
  check(qgs_suite_report_counts(raw, &total, &passed));
  if (c.format == "csv") {
    emit("suite,instances,passed\n" + suite + "," + std::to_string(total) + "," +
             std::to_string(passed) + "\n",
         c.out);
  } else {
    char* s = nullptr;
    check(qgs_suite_report_json(raw, &s));
    emit(take(s), c.out);
  }
  std::cerr << suite << ": " << passed << "/" << total << " passed\n";
  return passed == total ? kPass : kViolation;
}

int run_gen(const Common& c) {
  require_source(c);
  if (!c.scf.empty()) {
    qgs_scf* f = nullptr;
    check(qgs_scf_open(with_seed(c.scf, {"random_table"}, c.seed).c_str(), c.n, c.m, &f));
    ScfPtr hold(f);
    qgs_options o;
    qgs_options_init(&o);
    o.workers = c.workers;
    qgs_scf* table = nullptr;
    check(qgs_scf_materialize(f, &o, &table));
    ScfPtr thold(table);
    check(qgs_scf_save(table, c.out.c_str()));
  } else {
    qgs_gswf* g = nullptr;
    check(qgs_gswf_open(with_seed(c.g, {"random", "random_odd"}, c.seed).c_str(), c.n, c.m, &g));
    GswfPtr hold(g);
    check(qgs_gswf_save(g, c.out.c_str()));
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative Gibbard-Satterthwaite and Arrow toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qgs_version());

  Common c;
  auto* metrics = app.add_subcommand("metrics", "Report SCF or GSWF quantities");
  auto* reduce = app.add_subcommand("reduce", "Build the IIA GSWF of an SCF and check the reduction chain");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  auto* gen = app.add_subcommand("gen", "Write an SCF table or GSWF file");

  for (auto* cmd : {metrics, reduce, gen}) {
    cmd->add_option("--n", c.n, "Voters")->check(CLI::PositiveNumber);
    cmd->add_option("--m", c.m, "Alternatives")->check(CLI::Range(2, 8));
  }
  for (auto* cmd : {metrics, gen}) {
    auto* scf = cmd->add_option("--scf", c.scf, "SCF rule spec or SCF3 file");
    auto* g = cmd->add_option("--g", c.g, "GSWF spec or GSWF file");
    scf->excludes(g);
  }
  for (auto* cmd : {metrics, reduce, verify}) add_run_flags(cmd, c);
  gen->add_option("--seed", c.seed, "Seed for random artifacts");
  gen->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  gen->add_option("--out", c.out, "Output path")->required();

  int tie_voter = 0;
  std::string gswf_out = "reduced.gswf";
  reduce->add_option("--scf", c.scf, "SCF rule spec or SCF3 file")->required();
  reduce->add_option("--tie-voter", tie_voter, "Voter whose bit breaks p_a = p_b ties");
  reduce->add_option("--gswf-out", gswf_out, "Where to write the GSWF")->capture_default_str();

  std::string suite;
  std::uint64_t trials = 0;
  std::vector<int> ns;
  std::string instance;
  verify->add_option("--suite", suite, "Suite name");
  verify->add_option("--trials", trials, "Random instances (0: suite default)");
  verify->add_option("--n", ns, "Voter counts (repeatable; default: suite sizes)");
  verify->add_option("--instance", instance, "Rerun one serialized instance (JSON file)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*metrics) return run_metrics(c);
    if (*reduce) return run_reduce(c, tie_voter, gswf_out);
    if (*verify) return run_verify(c, suite, trials, ns, instance);
    if (*gen) return run_gen(c);
  } catch (const Failure& f) {
    std::cerr << "qgs: " << f.message << "\n";
    return kUsage;
  }
  return kUsage;
}
