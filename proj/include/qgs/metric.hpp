#pragma once

#include "qgs/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgs {

enum class Mode { Auto, Exact, Sampled };

/// Exact enumeration is used while (m!)^n * m! stays within this many
/// elementary evaluations.
inline constexpr std::uint64_t kDefaultExactBudget = 1'000'000'000ULL;

/// Samples per deterministic Monte-Carlo chunk.
inline constexpr std::uint64_t kSampleChunk = 1ULL << 16;

struct Options {
  Mode mode = Mode::Auto;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::uint64_t budget = kDefaultExactBudget;
};

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True when (m!)^n * m! <= budget.
bool within_budget(int n, int m, std::uint64_t budget);

/// Resolves Auto against the budget; throws BudgetError when Exact is
/// requested beyond it.
bool use_exact(const Options& opts, int n, int m, const std::string& what);

struct MetricReport {
  std::string metric;
  std::vector<int> indices;
  bool exact = true;
  Rational value;             // exact mode
  double estimate = 0.0;      // sampled mode; mirrors value in exact mode
  double ci95 = 0.0;          // sampled mode only
  std::uint64_t samples = 0;  // sampled mode only
  std::uint64_t seed = 0;     // sampled mode only

  double as_double() const { return exact ? to_double(value) : estimate; }

  static MetricReport make_exact(std::string metric, std::vector<int> indices, Rational v);
  static MetricReport make_sampled(std::string metric, std::vector<int> indices, double estimate,
                                   double ci95, std::uint64_t samples, std::uint64_t seed);
  /// Bernoulli estimate with Wilson 95% half-width.
  static MetricReport make_bernoulli(std::string metric, std::vector<int> indices,
                                     std::uint64_t hits, std::uint64_t samples,
                                     std::uint64_t seed);
};

/// Half-width of the 95% Wilson score interval for hits/samples.
double wilson_half_width(std::uint64_t hits, std::uint64_t samples);

/// 97.5% standard normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

}  // namespace qgs
