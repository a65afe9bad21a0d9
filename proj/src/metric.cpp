#include "qgs/metric.hpp"

#include "qgs/prefcore.hpp"

#include <cmath>

namespace qgs {

bool within_budget(int n, int m, std::uint64_t budget) {
  const std::uint64_t f = factorial(m);
  std::uint64_t cost = f;
  for (int v = 0; v < n; ++v) {
    if (cost > budget / f) return false;
    cost *= f;
  }
  return cost <= budget;
}

bool use_exact(const Options& opts, int n, int m, const std::string& what) {
  const bool fits = within_budget(n, m, opts.budget);
  switch (opts.mode) {
    case Mode::Exact:
      if (!fits)
        throw BudgetError(what + ": exact enumeration exceeds the budget for n=" +
                          std::to_string(n) + ", m=" + std::to_string(m) +
                          "; rerun with --samples N");
      return true;
    case Mode::Sampled:
      return false;
    case Mode::Auto:
      break;
  }
  return fits;
}

MetricReport MetricReport::make_exact(std::string metric, std::vector<int> indices, Rational v) {
  MetricReport r;
  r.metric = std::move(metric);
  r.indices = std::move(indices);
  r.exact = true;
  r.estimate = to_double(v);
  r.value = std::move(v);
  return r;
}

MetricReport MetricReport::make_sampled(std::string metric, std::vector<int> indices,
                                        double estimate, double ci95, std::uint64_t samples,
                                        std::uint64_t seed) {
  MetricReport r;
  r.metric = std::move(metric);
  r.indices = std::move(indices);
  r.exact = false;
  r.estimate = estimate;
  r.ci95 = ci95;
  r.samples = samples;
  r.seed = seed;
  return r;
}

MetricReport MetricReport::make_bernoulli(std::string metric, std::vector<int> indices,
                                          std::uint64_t hits, std::uint64_t samples,
                                          std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("sampled metric needs at least one sample");
  return make_sampled(std::move(metric), std::move(indices),
                      static_cast<double>(hits) / static_cast<double>(samples),
                      wilson_half_width(hits, samples), samples, seed);
}

double wilson_half_width(std::uint64_t hits, std::uint64_t samples) {
  if (samples == 0) return 0.0;
  const double nn = static_cast<double>(samples);
  const double p = static_cast<double>(hits) / nn;
  const double z2 = kZ95 * kZ95;
  return kZ95 / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

}  // namespace qgs
