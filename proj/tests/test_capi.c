/* Exercises the shared library through its C header only. */

#include "qgs/qgs.h"

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void test_scf(void) {
  qgs_scf* f = NULL;
  EXPECT(qgs_scf_open("plurality", 3, 3, &f) == QGS_OK);
  int n = 0, m = 0;
  EXPECT(qgs_scf_shape(f, &n, &m) == QGS_OK);
  EXPECT(n == 3 && m == 3);

  /* tops a, b, a */
  const uint32_t orders[3] = {0, 2, 1};
  uint8_t out = 9;
  EXPECT(qgs_scf_eval(f, orders, 3, &out) == QGS_OK);
  EXPECT(out == 0);
  const uint32_t bad[3] = {0, 6, 1};
  EXPECT(qgs_scf_eval(f, bad, 3, &out) == QGS_ERR_DOMAIN);
  EXPECT(strlen(qgs_last_error()) > 0);

  qgs_options o;
  qgs_options_init(&o);
  o.mode = QGS_MODE_EXACT;
  qgs_report* r = NULL;
  EXPECT(qgs_metrics(f, &o, &r) == QGS_OK);
  EXPECT(qgs_report_size(r) > 0);
  double v = 0;
  EXPECT(qgs_report_value(r, "manipulation_power", &v) == QGS_OK);
  EXPECT(v > 0.024 && v < 0.025);
  EXPECT(qgs_report_value(r, "no_such_metric", &v) == QGS_ERR_DOMAIN);
  char* text = NULL;
  EXPECT(qgs_report_render(r, QGS_FORMAT_JSON, &text) == QGS_OK);
  EXPECT(text && strstr(text, "\"num\": \"2\"") != NULL);
  qgs_string_free(text);
  EXPECT(qgs_report_render(r, QGS_FORMAT_CSV, &text) == QGS_OK);
  EXPECT(text && strncmp(text, "metric,indices,mode", 19) == 0);
  qgs_string_free(text);
  qgs_report_free(r);

  qgs_gswf* g = NULL;
  int chain = 5;
  EXPECT(qgs_reduce(f, 0, NULL, &g, &r, &chain) == QGS_OK);
  EXPECT(chain == 1);
  qgs_gswf* h = NULL;
  EXPECT(qgs_gswf_from_scf(f, 0, 1, &h) == QGS_OK);
  EXPECT(qgs_gswf_equal(g, h));
  qgs_gswf_free(h);
  qgs_gswf_free(g);
  qgs_report_free(r);
  qgs_scf_free(f);

  EXPECT(qgs_scf_open("plurality", 12, 3, &f) == QGS_OK);
  EXPECT(qgs_metrics(f, &o, &r) == QGS_ERR_BUDGET);
  qgs_scf_free(f);
  EXPECT(qgs_scf_open("no_such_rule", 2, 3, &f) == QGS_ERR_DOMAIN);
  EXPECT(qgs_scf_open(NULL, 2, 3, &f) == QGS_ERR_ARGUMENT);
}

static void test_files(void) {
  const char* path = "capi_test.scf";
  qgs_scf* f = NULL;
  EXPECT(qgs_scf_open("random_table:1", 2, 3, &f) == QGS_OK);
  EXPECT(qgs_scf_save(f, path) == QGS_OK);
  qgs_scf* back = NULL;
  EXPECT(qgs_scf_open(path, 2, 3, &back) == QGS_OK);
  uint32_t orders[2];
  for (uint32_t a = 0; a < 6; ++a)
    for (uint32_t b = 0; b < 6; ++b) {
      uint8_t x = 0, y = 0;
      orders[0] = a;
      orders[1] = b;
      qgs_scf_eval(f, orders, 2, &x);
      qgs_scf_eval(back, orders, 2, &y);
      EXPECT(x == y);
    }
  qgs_scf_free(back);
  qgs_scf_free(f);
  remove(path);

  EXPECT(qgs_scf_open("plurality", 2, 3, &f) == QGS_OK);
  EXPECT(qgs_scf_save(f, "/nonexistent_dir/x.scf") == QGS_ERR_IO);
  qgs_scf_free(f);

  FILE* junk = fopen("capi_junk.scf", "wb");
  fputs("not a table", junk);
  fclose(junk);
  EXPECT(qgs_scf_open("capi_junk.scf", 0, 0, &f) == QGS_ERR_FORMAT);
  remove("capi_junk.scf");

  qgs_gswf* g = NULL;
  EXPECT(qgs_gswf_open("dictator:1", 2, 3, &g) == QGS_OK);
  uint8_t table[4];
  EXPECT(qgs_gswf_table(g, 0, table, 4) == QGS_OK);
  EXPECT(table[0] == 0 && table[1] == 0 && table[2] == 1 && table[3] == 1);
  EXPECT(qgs_gswf_table(g, 3, table, 4) == QGS_ERR_ARGUMENT);
  EXPECT(qgs_gswf_table(g, 0, table, 2) == QGS_ERR_ARGUMENT);
  qgs_report* r = NULL;
  EXPECT(qgs_gswf_metrics(g, NULL, &r) == QGS_OK);
  double v = 1;
  EXPECT(qgs_report_value(r, "ngcw", &v) == QGS_OK);
  EXPECT(v == 0);
  qgs_report_free(r);
  qgs_gswf_free(g);
  EXPECT(qgs_gswf_open("majority", 3, 4, &g) == QGS_OK);
  EXPECT(qgs_gswf_metrics(g, NULL, &r) == QGS_OK);
  qgs_report_free(r);
  qgs_gswf_free(g);
}

static void test_suites(void) {
  char* names = NULL;
  EXPECT(qgs_suite_names(&names) == QGS_OK);
  EXPECT(names && strstr(names, "first-reduction\n") != NULL);
  qgs_string_free(names);

  qgs_suite_report* s = NULL;
  const int ns[1] = {3};
  EXPECT(qgs_verify("first-reduction", 20, 7, ns, 1, NULL, NULL, &s) == QGS_OK);
  uint64_t total = 0, passed = 0;
  EXPECT(qgs_suite_report_counts(s, &total, &passed) == QGS_OK);
  EXPECT(total > 0 && total == passed);
  char* json = NULL;
  EXPECT(qgs_suite_report_json(s, &json) == QGS_OK);
  EXPECT(json && strstr(json, "\"counterexample\": null") != NULL);
  qgs_string_free(json);
  qgs_suite_report_free(s);

  EXPECT(qgs_verify("cauchy", 0, 0, NULL, 0, NULL, "{\"scf\":\"borda\",\"n\":2}", &s) == QGS_OK);
  qgs_suite_report_counts(s, &total, &passed);
  EXPECT(total == 1 && passed == 1);
  qgs_suite_report_free(s);
  EXPECT(qgs_verify("cauchy", 0, 0, NULL, 0, NULL, "{not json", &s) == QGS_ERR_FORMAT);
  EXPECT(qgs_verify("nope", 0, 0, NULL, 0, NULL, NULL, &s) == QGS_ERR_DOMAIN);
}

static void test_determinism(void) {
  qgs_scf* f = NULL;
  qgs_scf_open("plurality", 10, 3, &f);
  qgs_options o;
  qgs_options_init(&o);
  o.mode = QGS_MODE_SAMPLED;
  o.samples = 100000;
  o.seed = 99;
  char* text[2];
  for (int k = 0; k < 2; ++k) {
    o.workers = k == 0 ? 1 : 8;
    qgs_report* r = NULL;
    EXPECT(qgs_metrics(f, &o, &r) == QGS_OK);
    qgs_report_render(r, QGS_FORMAT_JSON, &text[k]);
    qgs_report_free(r);
  }
  EXPECT(strcmp(text[0], text[1]) == 0);
  qgs_string_free(text[0]);
  qgs_string_free(text[1]);
  o.samples = 0;
  qgs_report* r = NULL;
  EXPECT(qgs_metrics(f, &o, &r) == QGS_ERR_DOMAIN);
  qgs_scf_free(f);
}

int main(void) {
  EXPECT(strcmp(qgs_version(), "0.1.0") == 0);
  EXPECT(strcmp(qgs_status_name(QGS_ERR_BUDGET), "budget exceeded") == 0);
  test_scf();
  test_files();
  test_suites();
  test_determinism();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
