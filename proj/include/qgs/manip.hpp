#pragma once

// Manipulation power M_i, inter-pair dependence M^{a,b} and minority
// preference N^{a,b}, exact or sampled.

#include "qgs/metric.hpp"
#include "qgs/scf.hpp"

#include <vector>

namespace qgs {

/// Outcome counts over the 3^n completions of one pairwise column.
struct ColumnStats {
  std::uint64_t column = 0;
  std::uint64_t count_a = 0;
  std::uint64_t count_b = 0;
  std::uint64_t completions = 0;  // 3^n

  Rational p_a() const { return ratio(count_a, completions); }
  Rational p_b() const { return ratio(count_b, completions); }
};

/// ColumnStats for every column z in [0, 2^n); m = 3 only.
std::vector<ColumnStats> column_stats(const Scf& f, Alt a, Alt b, int workers = 1);

MetricReport manipulation_power(const Scf& f, int voter, const Options& opts = {});
/// M_i for every voter, one pass over the profile space.
std::vector<MetricReport> manipulation_powers(const Scf& f, const Options& opts = {});
MetricReport manipulation_power_total(const Scf& f, const Options& opts = {});

/// Pr[F(x) = a, F(x') = b] with x, x' agreeing on the (a, b) column.
MetricReport mab(const Scf& f, Alt a, Alt b, const Options& opts = {});
/// E over columns of min(p_a, p_b).
MetricReport nab(const Scf& f, Alt a, Alt b, const Options& opts = {});

/// Exact forms used by the verification suites.
Rational mab_exact(const std::vector<ColumnStats>& stats);
Rational nab_exact(const std::vector<ColumnStats>& stats);

}  // namespace qgs
