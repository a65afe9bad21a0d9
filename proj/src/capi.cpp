#include "qgs/qgs.h"

#include "qgs/commands.hpp"
#include "qgs/fileio.hpp"
#include "qgs/suites.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct qgs_scf {
  qgs::Scf f;
};
struct qgs_gswf {
  qgs::GswfIia g;
};
struct qgs_report {
  qgs::Report r;
};
struct qgs_suite_report {
  qgs::SuiteReport r;
};

namespace {

thread_local std::string last_error;

qgs_status set_error(qgs_status s, const char* what) {
  last_error = what;
  return s;
}

template <class Fn>
qgs_status guarded(Fn fn) {
  try {
    fn();
    last_error.clear();
    return QGS_OK;
  } catch (const qgs::BudgetError& e) {
    return set_error(QGS_ERR_BUDGET, e.what());
  } catch (const qgs::UnsupportedError& e) {
    return set_error(QGS_ERR_UNSUPPORTED, e.what());
  } catch (const qgs::DomainError& e) {
    return set_error(QGS_ERR_DOMAIN, e.what());
  } catch (const qgs::IoError& e) {
    return set_error(QGS_ERR_IO, e.what());
  } catch (const qgs::FormatError& e) {
    return set_error(QGS_ERR_FORMAT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(QGS_ERR_FORMAT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(QGS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(QGS_ERR_INTERNAL, e.what());
  }
}

qgs::Options to_options(const qgs_options* o) {
  qgs::Options out;
  if (!o) return out;
  switch (o->mode) {
    case QGS_MODE_AUTO: out.mode = qgs::Mode::Auto; break;
    case QGS_MODE_EXACT: out.mode = qgs::Mode::Exact; break;
    case QGS_MODE_SAMPLED: out.mode = qgs::Mode::Sampled; break;
    default: throw qgs::DomainError("unknown mode");
  }
  if (out.mode == qgs::Mode::Sampled && o->samples == 0)
    throw qgs::DomainError("sampled mode needs samples >= 1");
  out.samples = o->samples;
  out.seed = o->seed;
  out.workers = o->workers < 1 ? 1 : o->workers;
  out.budget = o->budget;
  return out;
}

char* copy_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

#define QGS_REQUIRE(cond)                                                   \
  do {                                                                      \
    if (!(cond)) return set_error(QGS_ERR_ARGUMENT, "invalid argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* qgs_version(void) { return "0.1.0"; }

const char* qgs_last_error(void) { return last_error.c_str(); }

const char* qgs_status_name(qgs_status status) {
  switch (status) {
    case QGS_OK: return "ok";
    case QGS_ERR_ARGUMENT: return "invalid argument";
    case QGS_ERR_DOMAIN: return "domain error";
    case QGS_ERR_UNSUPPORTED: return "unsupported";
    case QGS_ERR_BUDGET: return "budget exceeded";
    case QGS_ERR_IO: return "i/o error";
    case QGS_ERR_FORMAT: return "format error";
    case QGS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void qgs_options_init(qgs_options* opts) {
  if (!opts) return;
  const qgs::Options d;
  opts->mode = QGS_MODE_AUTO;
  opts->samples = d.samples;
  opts->seed = d.seed;
  opts->workers = d.workers;
  opts->budget = d.budget;
}

void qgs_string_free(char* s) { std::free(s); }

qgs_status qgs_scf_open(const char* source, int n, int m, qgs_scf** out) {
  QGS_REQUIRE(source && out);
  return guarded([&] { *out = new qgs_scf{qgs::open_scf(source, n, m)}; });
}

qgs_status qgs_scf_materialize(const qgs_scf* f, const qgs_options* opts, qgs_scf** out) {
  QGS_REQUIRE(f && out);
  return guarded([&] {
    const qgs::Options o = to_options(opts);
    *out = new qgs_scf{qgs::materialize(f->f, o.workers, o.budget)};
  });
}

qgs_status qgs_scf_save(const qgs_scf* f, const char* path) {
  QGS_REQUIRE(f && path);
  return guarded([&] { qgs::save_scf(f->f.has_table() ? f->f : qgs::materialize(f->f), path); });
}

qgs_status qgs_scf_shape(const qgs_scf* f, int* n, int* m) {
  QGS_REQUIRE(f);
  if (n) *n = f->f.voters();
  if (m) *m = f->f.alternatives();
  return QGS_OK;
}

qgs_status qgs_scf_eval(const qgs_scf* f, const uint32_t* orders, size_t n, uint8_t* out) {
  QGS_REQUIRE(f && orders && out);
  return guarded([&] {
    if (n != static_cast<size_t>(f->f.voters())) throw qgs::DomainError("profile has wrong voter count");
    const auto fm = qgs::factorial(f->f.alternatives());
    for (size_t v = 0; v < n; ++v)
      if (orders[v] >= fm) throw qgs::DomainError("order index out of range");
    *out = f->f(std::span<const qgs::OrderIndex>(orders, n));
  });
}

void qgs_scf_free(qgs_scf* f) { delete f; }

qgs_status qgs_gswf_open(const char* source, int n, int m, qgs_gswf** out) {
  QGS_REQUIRE(source && out);
  return guarded([&] { *out = new qgs_gswf{qgs::open_gswf(source, n, m)}; });
}

qgs_status qgs_gswf_from_scf(const qgs_scf* f, int tie_voter, int workers, qgs_gswf** out) {
  QGS_REQUIRE(f && out);
  return guarded([&] { *out = new qgs_gswf{qgs::gswf_from_scf(f->f, tie_voter, workers < 1 ? 1 : workers)}; });
}

qgs_status qgs_gswf_save(const qgs_gswf* g, const char* path) {
  QGS_REQUIRE(g && path);
  return guarded([&] { qgs::save_gswf(g->g, path); });
}

qgs_status qgs_gswf_shape(const qgs_gswf* g, int* n, int* m) {
  QGS_REQUIRE(g);
  if (n) *n = g->g.voters();
  if (m) *m = g->g.alternatives();
  return QGS_OK;
}

qgs_status qgs_gswf_table(const qgs_gswf* g, int p, uint8_t* out, size_t len) {
  QGS_REQUIRE(g && out);
  QGS_REQUIRE(p >= 0 && p < qgs::pair_count(g->g.alternatives()));
  const auto& t = g->g.table(p);
  QGS_REQUIRE(len >= t.size());
  std::memcpy(out, t.data(), t.size());
  return QGS_OK;
}

int qgs_gswf_equal(const qgs_gswf* g, const qgs_gswf* h) { return g && h && g->g == h->g; }

void qgs_gswf_free(qgs_gswf* g) { delete g; }

qgs_status qgs_metrics(const qgs_scf* f, const qgs_options* opts, qgs_report** out) {
  QGS_REQUIRE(f && out);
  return guarded([&] { *out = new qgs_report{qgs::metrics_report(f->f, to_options(opts))}; });
}

qgs_status qgs_gswf_metrics(const qgs_gswf* g, const qgs_options* opts, qgs_report** out) {
  QGS_REQUIRE(g && out);
  return guarded([&] { *out = new qgs_report{qgs::gswf_report(g->g, to_options(opts))}; });
}

qgs_status qgs_reduce(const qgs_scf* f, int tie_voter, const qgs_options* opts, qgs_gswf** g_out,
                      qgs_report** out, int* chain) {
  QGS_REQUIRE(f && out);
  return guarded([&] {
    qgs::ReduceResult r = qgs::reduce_report(f->f, tie_voter, to_options(opts));
    if (chain) *chain = r.chain_checked ? (r.chain_holds ? 1 : 0) : -1;
    if (g_out) *g_out = new qgs_gswf{std::move(r.g)};
    *out = new qgs_report{std::move(r.report)};
  });
}

qgs_status qgs_report_render(const qgs_report* r, qgs_format format, char** out) {
  QGS_REQUIRE(r && out);
  QGS_REQUIRE(format == QGS_FORMAT_JSON || format == QGS_FORMAT_CSV);
  return guarded([&] {
    *out = copy_string(format == QGS_FORMAT_JSON ? qgs::render_json(r->r) : qgs::render_csv(r->r));
  });
}

size_t qgs_report_size(const qgs_report* r) { return r ? r->r.metrics.size() : 0; }

qgs_status qgs_report_value(const qgs_report* r, const char* metric, double* out) {
  QGS_REQUIRE(r && metric && out);
  for (const auto& m : r->r.metrics)
    if (m.metric == metric) {
      *out = m.as_double();
      return QGS_OK;
    }
  return set_error(QGS_ERR_DOMAIN, "no such metric in report");
}

void qgs_report_free(qgs_report* r) { delete r; }

qgs_status qgs_suite_names(char** out) {
  QGS_REQUIRE(out);
  return guarded([&] {
    std::string s;
    for (const auto& n : qgs::suite_names()) s += n + "\n";
    *out = copy_string(s);
  });
}

qgs_status qgs_verify(const char* suite, uint64_t trials, uint64_t seed, const int* ns, size_t ns_len,
                      const qgs_options* opts, const char* instance_json, qgs_suite_report** out) {
  QGS_REQUIRE(suite && out);
  QGS_REQUIRE(ns || ns_len == 0);
  return guarded([&] {
    qgs::SuiteConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.ns.assign(ns, ns + ns_len);
    cfg.opts = to_options(opts);
    if (instance_json) cfg.instance = nlohmann::ordered_json::parse(instance_json);
    *out = new qgs_suite_report{qgs::run_suite(suite, cfg)};
  });
}

qgs_status qgs_suite_report_counts(const qgs_suite_report* r, uint64_t* instances, uint64_t* passed) {
  QGS_REQUIRE(r);
  if (instances) *instances = r->r.instances;
  if (passed) *passed = r->r.passed;
  return QGS_OK;
}

qgs_status qgs_suite_report_json(const qgs_suite_report* r, char** out) {
  QGS_REQUIRE(r && out);
  return guarded([&] { *out = copy_string(r->r.to_json().dump(2) + "\n"); });
}

void qgs_suite_report_free(qgs_suite_report* r) { delete r; }

}  // extern "C"
