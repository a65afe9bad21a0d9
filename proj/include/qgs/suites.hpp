#pragma once

// Named verification suites. Every instance is a small JSON object; a suite
// enumerates instances from (seed, trials) and checks each one. A failing
// instance is returned verbatim (plus a "detail" field) and can be fed back
// through SuiteConfig::instance to rerun that single check.

#include "qgs/arrow.hpp"
#include "qgs/metric.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qgs {

struct SuiteConfig {
  std::uint64_t trials = 0;  // 0: the suite's default
  std::uint64_t seed = 0;
  std::vector<int> ns;       // empty: the suite's default sizes
  Options opts;              // workers, samples, budget for sampled checks
  std::optional<nlohmann::ordered_json> instance;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t instances = 0;
  std::uint64_t passed = 0;
  std::optional<nlohmann::ordered_json> counterexample;
  double wall_seconds = 0.0;

  bool ok() const { return instances == passed; }
  nlohmann::ordered_json to_json() const;
};

const std::vector<std::string>& suite_names();
std::uint64_t suite_default_trials(const std::string& name);

/// Throws DomainError for an unknown suite or a malformed instance.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg = {});

/// Boolean tables as '0'/'1' strings, entry z at position z.
std::string table_to_string(const BoolTable& t);
BoolTable table_from_string(const std::string& s);
nlohmann::ordered_json gswf_to_json(const GswfIia& g);
GswfIia gswf_from_json(const nlohmann::ordered_json& j);

}  // namespace qgs
