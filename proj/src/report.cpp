#include "qgs/report.hpp"

#include <sstream>

namespace qgs {

nlohmann::ordered_json metric_json(const MetricReport& r) {
  nlohmann::ordered_json j;
  j["metric"] = r.metric;
  j["indices"] = r.indices;
  j["mode"] = r.exact ? "exact" : "sampled";
  if (r.exact) {
    j["num"] = numerator_string(r.value);
    j["den"] = denominator_string(r.value);
    j["value"] = to_double(r.value);
    j["ci95"] = nullptr;
    j["samples"] = nullptr;
    j["seed"] = nullptr;
  } else {
    j["num"] = nullptr;
    j["den"] = nullptr;
    j["value"] = r.estimate;
    j["ci95"] = r.ci95;
    j["samples"] = r.samples;
    j["seed"] = std::to_string(r.seed);
  }
  return j;
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  for (const auto& [k, v] : r.info) j[k] = v;
  j["metrics"] = nlohmann::ordered_json::array();
  for (const auto& m : r.metrics) j["metrics"].push_back(metric_json(m));
  return j;
}

std::string render_json(const Report& r) { return report_json(r).dump(2) + "\n"; }

std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "metric,indices,mode,num,den,value,ci95,samples,seed\n";
  for (const auto& m : r.metrics) {
    const auto j = metric_json(m);
    std::string indices;
    for (std::size_t k = 0; k < m.indices.size(); ++k) indices += (k ? ";" : "") + std::to_string(m.indices[k]);
    auto field = [&](const char* key) -> std::string {
      const auto& v = j[key];
      if (v.is_null()) return "";
      if (v.is_string()) return v.get<std::string>();
      return v.dump();
    };
    out << m.metric << ',' << indices << ',' << field("mode") << ',' << field("num") << ','
        << field("den") << ',' << field("value") << ',' << field("ci95") << ','
        << field("samples") << ',' << field("seed") << '\n';
  }
  return out.str();
}

MetricReport flag_metric(std::string name, bool value, std::vector<int> indices) {
  return MetricReport::make_exact(std::move(name), std::move(indices), Rational(value ? 1 : 0));
}

}  // namespace qgs
