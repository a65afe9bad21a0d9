#include "doctest.h"

#include "qgs/commands.hpp"
#include "qgs/fileio.hpp"
#include "qgs/report.hpp"

#include <filesystem>
#include <fstream>

using namespace qgs;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qgs_test_" + name);
}

}  // namespace

TEST_CASE("SCF3 byte layout and round trip") {
  const auto f = materialize(zoo_make("dictatorship", 2, 3));
  const auto bytes = encode_scf(f);
  REQUIRE(bytes.size() == 8 + 36);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "SCF3");
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 3);
  CHECK(bytes[6] == 2);
  CHECK(bytes[7] == 0);
  for (std::uint64_t k = 0; k < 36; ++k) CHECK(bytes[8 + k] == order_table(3).top(k % 6));
  const auto g = decode_scf(bytes);
  CHECK(g.voters() == 2);
  CHECK(g.alternatives() == 3);
  CHECK(std::equal(g.outputs().begin(), g.outputs().end(), f.outputs().begin()));

  const auto path = temp_path("rt.scf");
  const auto r = materialize(zoo_make("random_table", 3, 4, {.seed = 2}));
  save_scf(r, path);
  const auto back = load_scf(path);
  CHECK(std::equal(back.outputs().begin(), back.outputs().end(), r.outputs().begin(), r.outputs().end()));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(encode_scf(zoo_make("plurality", 2, 3)), DomainError);
}

TEST_CASE("SCF3 rejects malformed input") {
  auto bytes = encode_scf(materialize(zoo_make("plurality", 2, 3)));
  CHECK_THROWS_AS(decode_scf(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 5)), FormatError);
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_scf(bad), FormatError);
  bad = bytes;
  bad[4] = 2;
  CHECK_THROWS_AS(decode_scf(bad), FormatError);
  bad = bytes;
  bad.pop_back();
  CHECK_THROWS_AS(decode_scf(bad), FormatError);
  bad = bytes;
  bad.back() = 3;
  CHECK_THROWS_AS(decode_scf(bad), FormatError);
  CHECK_THROWS_AS(load_scf(temp_path("does_not_exist")), IoError);
}

TEST_CASE("GSWF byte layout and round trip") {
  const auto g = dictator_gswf(3, 3, 1);
  const auto bytes = encode_gswf(g);
  REQUIRE(bytes.size() == 8 + 3);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "GSWF");
  CHECK(bytes[5] == 3);
  CHECK(bytes[6] == 3);
  // Voter 1's bit: entries 2, 3, 6, 7 set, LSB first.
  CHECK(bytes[8] == 0b11001100);
  CHECK(decode_gswf(bytes) == g);

  Rng rng(6);
  for (int n = 1; n <= 5; ++n) {
    const auto h = random_gswf(n, 4, rng);
    const auto path = temp_path("rt.gswf");
    save_gswf(h, path);
    CHECK(load_gswf(path) == h);
    std::filesystem::remove(path);
  }
  auto bad = encode_gswf(random_gswf(1, 3, rng));
  bad[8] |= 0x80;
  CHECK_THROWS_AS(decode_gswf(bad), FormatError);
  bad = bytes;
  bad[2] = 'x';
  CHECK_THROWS_AS(decode_gswf(bad), FormatError);
}

TEST_CASE("opening artifacts by spec or path") {
  const auto path = temp_path("open.scf");
  save_scf(materialize(zoo_make("borda", 2, 3)), path);
  const auto f = open_scf(path.string(), 2, 3);
  CHECK(f.has_table());
  CHECK_THROWS_AS(open_scf(path.string(), 3, 3), DomainError);
  std::filesystem::remove(path);
  CHECK(open_scf("plurality", 3, 0).alternatives() == 3);
  CHECK_THROWS_AS(open_scf("plurality", 0, 3), DomainError);

  CHECK(gswf_make_spec("dictator:1", 2, 3) == dictator_gswf(2, 3, 1));
  CHECK(gswf_make_spec("reduce:dictatorship:1", 2, 3) == dictator_gswf(2, 3, 1));
  CHECK(gswf_make_spec("random:4", 2, 3) == gswf_make_spec("random:4", 2, 3));
  CHECK(is_neutral(gswf_make_spec("random_odd:4", 3, 4)));
  CHECK(is_neutral(gswf_make_spec("majority", 3, 3)));
  CHECK_THROWS_AS(gswf_make_spec("parity", 2, 3), DomainError);
  CHECK_THROWS_AS(gswf_make_spec("bogus", 2, 3), DomainError);
}

TEST_CASE("report rendering") {
  Report r;
  r.command = "metrics";
  r.info = {{"source", "x"}, {"n", "3"}};
  r.metrics.push_back(MetricReport::make_exact("mab", {0, 1}, Rational(6, 81)));
  r.metrics.push_back(MetricReport::make_bernoulli("manipulation_power", {2}, 25, 1000, 42));
  const auto j = report_json(r);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "source", "n", "metrics"});
  const auto& e = j["metrics"][0];
  std::vector<std::string> fields;
  for (const auto& [k, v] : e.items()) fields.push_back(k);
  CHECK(fields == std::vector<std::string>{"metric", "indices", "mode", "num", "den", "value", "ci95",
                                           "samples", "seed"});
  CHECK(e["mode"] == "exact");
  CHECK(e["num"] == "2");
  CHECK(e["den"] == "27");
  CHECK(e["ci95"].is_null());
  CHECK(e["seed"].is_null());
  const auto& s = j["metrics"][1];
  CHECK(s["mode"] == "sampled");
  CHECK(s["num"].is_null());
  CHECK(s["value"].get<double>() == 0.025);
  CHECK(s["ci95"].get<double>() == doctest::Approx(wilson_half_width(25, 1000)));
  CHECK(s["samples"] == 1000);
  CHECK(s["seed"] == "42");

  const auto csv = render_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "metric,indices,mode,num,den,value,ci95,samples,seed");
  std::getline(in, line);
  CHECK(line.rfind("mab,0;1,exact,2,27,", 0) == 0);
  CHECK(line.back() == ',');
  std::getline(in, line);
  CHECK(line.rfind("manipulation_power,2,sampled,,,0.025,", 0) == 0);
  CHECK(line.substr(line.size() - 8) == ",1000,42");
}

TEST_CASE("metrics report for a small SCF") {
  Options o;
  o.mode = Mode::Exact;
  const auto rep = metrics_report(zoo_make("dictatorship", 3, 3), o);
  for (const auto& m : rep.metrics) {
    if (m.metric == "manipulation_power" || m.metric == "manipulation_power_total" ||
        m.metric == "dist_to_dictatorship")
      CHECK(m.value == 0);
  }
  bool saw_dist = false;
  for (const auto& m : rep.metrics) saw_dist |= m.metric == "dist_to_dictatorship";
  CHECK(saw_dist);
}

TEST_CASE("reduce report") {
  Options o;
  const auto r = reduce_report(zoo_make("plurality", 3, 3), 0, o);
  CHECK(r.chain_checked);
  CHECK(r.chain_holds);
  const auto c = reduce_report(zoo_make("constant", 3, 3), 0, o);
  for (const auto& m : c.report.metrics)
    if (m.metric == "nt" || m.metric == "dist_tr3") CHECK(m.value == 0);
  Options s;
  s.mode = Mode::Sampled;
  s.samples = 1000;
  CHECK_FALSE(reduce_report(zoo_make("plurality", 3, 3), 0, s).chain_checked);
}
