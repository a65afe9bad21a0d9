#ifndef QGS_QGS_H
#define QGS_QGS_H

/* C interface to the qgs library. Every call returns a qgs_status; on
 * failure qgs_last_error() describes the problem (per thread). Objects are
 * opaque handles released with the matching *_free function, and strings
 * returned through char** must be released with qgs_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(QGS_BUILDING_LIBRARY)
#define QGS_API __attribute__((visibility("default")))
#else
#define QGS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  QGS_OK = 0,
  QGS_ERR_ARGUMENT = 1,    /* null pointer or invalid value */
  QGS_ERR_DOMAIN = 2,      /* precondition violated */
  QGS_ERR_UNSUPPORTED = 3, /* e.g. an m = 3 operation on m != 3 */
  QGS_ERR_BUDGET = 4,      /* exact enumeration beyond the budget */
  QGS_ERR_IO = 5,
  QGS_ERR_FORMAT = 6,
  QGS_ERR_INTERNAL = 7
} qgs_status;

typedef enum { QGS_MODE_AUTO = 0, QGS_MODE_EXACT = 1, QGS_MODE_SAMPLED = 2 } qgs_mode;
typedef enum { QGS_FORMAT_JSON = 0, QGS_FORMAT_CSV = 1 } qgs_format;

typedef struct {
  qgs_mode mode;
  uint64_t samples;
  uint64_t seed;
  int workers;
  uint64_t budget; /* elementary evaluations allowed on the exact path */
} qgs_options;

typedef struct qgs_scf qgs_scf;
typedef struct qgs_gswf qgs_gswf;
typedef struct qgs_report qgs_report;
typedef struct qgs_suite_report qgs_suite_report;

QGS_API const char* qgs_version(void);
QGS_API const char* qgs_last_error(void);
QGS_API const char* qgs_status_name(qgs_status status);
QGS_API void qgs_options_init(qgs_options* opts);
QGS_API void qgs_string_free(char* s);

/* SCFs. `source` is a zoo spec ("plurality", "dictatorship:1",
 * "random_table:7", ...) or a path to an SCF3 file. */
QGS_API qgs_status qgs_scf_open(const char* source, int n, int m, qgs_scf** out);
QGS_API qgs_status qgs_scf_materialize(const qgs_scf* f, const qgs_options* opts, qgs_scf** out);
QGS_API qgs_status qgs_scf_save(const qgs_scf* f, const char* path);
QGS_API qgs_status qgs_scf_shape(const qgs_scf* f, int* n, int* m);
/* orders: n order indices (lexicographic rank of each voter's ranking). */
QGS_API qgs_status qgs_scf_eval(const qgs_scf* f, const uint32_t* orders, size_t n, uint8_t* out);
QGS_API void qgs_scf_free(qgs_scf* f);

/* IIA GSWFs. `source` is a GSWF spec ("majority", "dictator:0",
 * "random:3", "random_odd:3", "reduce:plurality", ...) or a GSWF file. */
QGS_API qgs_status qgs_gswf_open(const char* source, int n, int m, qgs_gswf** out);
QGS_API qgs_status qgs_gswf_from_scf(const qgs_scf* f, int tie_voter, int workers, qgs_gswf** out);
QGS_API qgs_status qgs_gswf_save(const qgs_gswf* g, const char* path);
QGS_API qgs_status qgs_gswf_shape(const qgs_gswf* g, int* n, int* m);
/* Copies the 2^n entries of pair table p (lexicographic pair order). */
QGS_API qgs_status qgs_gswf_table(const qgs_gswf* g, int p, uint8_t* out, size_t len);
QGS_API int qgs_gswf_equal(const qgs_gswf* g, const qgs_gswf* h);
QGS_API void qgs_gswf_free(qgs_gswf* g);

/* Reports. opts may be NULL for defaults. */
QGS_API qgs_status qgs_metrics(const qgs_scf* f, const qgs_options* opts, qgs_report** out);
QGS_API qgs_status qgs_gswf_metrics(const qgs_gswf* g, const qgs_options* opts, qgs_report** out);
/* chain: 1 pass, 0 fail, -1 not checked (beyond the exact budget). */
QGS_API qgs_status qgs_reduce(const qgs_scf* f, int tie_voter, const qgs_options* opts,
                              qgs_gswf** g_out, qgs_report** out, int* chain);
QGS_API qgs_status qgs_report_render(const qgs_report* r, qgs_format format, char** out);
QGS_API size_t qgs_report_size(const qgs_report* r);
/* Value of the first metric with this name, as a double. */
QGS_API qgs_status qgs_report_value(const qgs_report* r, const char* metric, double* out);
QGS_API void qgs_report_free(qgs_report* r);

/* Verification suites. ns may be NULL (suite defaults); instance_json may be
 * NULL, otherwise it names one instance to rerun (e.g. a counterexample). */
QGS_API qgs_status qgs_suite_names(char** out); /* newline separated */
QGS_API qgs_status qgs_verify(const char* suite, uint64_t trials, uint64_t seed, const int* ns,
                              size_t ns_len, const qgs_options* opts, const char* instance_json,
                              qgs_suite_report** out);
QGS_API qgs_status qgs_suite_report_counts(const qgs_suite_report* r, uint64_t* instances,
                                           uint64_t* passed);
QGS_API qgs_status qgs_suite_report_json(const qgs_suite_report* r, char** out);
QGS_API void qgs_suite_report_free(qgs_suite_report* r);

#ifdef __cplusplus
}
#endif

#endif
