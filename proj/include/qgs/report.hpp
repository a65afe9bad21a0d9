#pragma once

// JSON and CSV rendering of metric reports. Exact values carry numerator
// and denominator as decimal strings; seeds are strings as well.

#include "qgs/metric.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qgs {

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> info;  // source, n, m, ...
  std::vector<MetricReport> metrics;
};

nlohmann::ordered_json metric_json(const MetricReport& r);
nlohmann::ordered_json report_json(const Report& r);
std::string render_json(const Report& r);
std::string render_csv(const Report& r);

/// Boolean verdicts share the metric schema as exact 0/1 values.
MetricReport flag_metric(std::string name, bool value, std::vector<int> indices = {});

}  // namespace qgs
