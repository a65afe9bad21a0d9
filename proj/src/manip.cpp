#include "qgs/manip.hpp"

#include "qgs/parallel.hpp"
#include "qgs/random.hpp"

#include <algorithm>
#include <cmath>

namespace qgs {

namespace {

constexpr std::uint64_t kChunk = 1ULL << 13;

void require_pair(const Scf& f, Alt a, Alt b) {
  if (f.alternatives() != 3) throw UnsupportedError("pair metrics require m = 3");
  if (a == b || a >= 3 || b >= 3) throw DomainError("pair metrics need two distinct alternatives");
}

// order_for[bit][digit] for the pair (a, b).
std::array<std::array<OrderIndex, 3>, 2> completion_orders(Alt a, Alt b) {
  std::array<std::array<OrderIndex, 3>, 2> out{};
  for (int bit = 0; bit < 2; ++bit)
    for (int d = 0; d < 3; ++d) out[bit][d] = compose_order(bit == 1, d, a, b);
  return out;
}

}  // namespace

std::vector<ColumnStats> column_stats(const Scf& f, Alt a, Alt b, int workers) {
  require_pair(f, a, b);
  const int n = f.voters();
  if (n > 20) throw BudgetError("column_stats: n too large for exhaustive column sweep");
  const Scf table = f.has_table() ? f : materialize(f, workers);
  const auto outputs = table.outputs();
  const auto orders = completion_orders(a, b);
  const std::uint64_t columns = pow2(n);
  const std::uint64_t completions = pow3(n);
  std::vector<std::uint64_t> stride(n);
  for (int v = 0; v < n; ++v) stride[v] = v == 0 ? 1 : stride[v - 1] * 6;

  std::vector<ColumnStats> stats(columns);
  map_chunks<int>(columns, 1, workers, [&](const ChunkRange& r) {
    const std::uint64_t z = r.begin;
    // Profile index of digit vector 0, then walk the ternary odometer.
    std::vector<std::uint8_t> digit(n, 0);
    std::uint64_t x = 0;
    for (int v = 0; v < n; ++v) x += orders[(z >> v) & 1U][0] * stride[v];
    ColumnStats s{z, 0, 0, completions};
    for (std::uint64_t k = 0; k < completions; ++k) {
      const Alt out = outputs[x];
      s.count_a += out == a;
      s.count_b += out == b;
      for (int v = 0; v < n; ++v) {
        const int bit = (z >> v) & 1U;
        const auto old_order = static_cast<std::int64_t>(orders[bit][digit[v]]);
        const auto step = static_cast<std::int64_t>(stride[v]);
        if (digit[v] < 2) {
          ++digit[v];
          x += static_cast<std::uint64_t>((orders[bit][digit[v]] - old_order) * step);
          break;
        }
        digit[v] = 0;
        x += static_cast<std::uint64_t>((orders[bit][0] - old_order) * step);
      }
    }
    stats[z] = s;
    return 0;
  });
  return stats;
}

Rational mab_exact(const std::vector<ColumnStats>& stats) {
  BigInt num = 0;
  for (const auto& s : stats) num += BigInt(s.count_a) * s.count_b;
  const std::uint64_t completions = stats.empty() ? 1 : stats.front().completions;
  return Rational(num, BigInt(stats.size()) * completions * completions);
}

Rational nab_exact(const std::vector<ColumnStats>& stats) {
  BigInt num = 0;
  for (const auto& s : stats) num += std::min(s.count_a, s.count_b);
  const std::uint64_t completions = stats.empty() ? 1 : stats.front().completions;
  return Rational(num, BigInt(stats.size()) * completions);
}

std::vector<MetricReport> manipulation_powers(const Scf& f, const Options& opts) {
  const int n = f.voters();
  const int m = f.alternatives();
  const OrderTable& t = order_table(m);
  const std::uint64_t fm = factorial(m);
  std::vector<MetricReport> out;

  if (use_exact(opts, n, m, "manipulation_power")) {
    const Scf table = materialize(f, opts.workers, opts.budget);
    const auto outputs = table.outputs();
    const std::uint64_t total = outputs.size();
    std::vector<std::uint64_t> stride(n);
    for (int v = 0; v < n; ++v) stride[v] = v == 0 ? 1 : stride[v - 1] * fm;
    auto partial = map_chunks<std::vector<std::uint64_t>>(
        total, kChunk, opts.workers, [&](const ChunkRange& r) {
          std::vector<std::uint64_t> hits(n, 0);
          for (std::uint64_t x = r.begin; x < r.end; ++x) {
            const Alt honest = outputs[x];
            for (int i = 0; i < n; ++i) {
              const auto own = static_cast<OrderIndex>((x / stride[i]) % fm);
              const std::uint64_t base = x - own * stride[i];
              const int honest_pos = t.position(own, honest);
              for (std::uint64_t lie = 0; lie < fm; ++lie)
                if (t.position(own, outputs[base + lie * stride[i]]) < honest_pos) ++hits[i];
            }
          }
          return hits;
        });
    for (int i = 0; i < n; ++i) {
      std::uint64_t h = 0;
      for (const auto& p : partial) h += p[i];
      out.push_back(MetricReport::make_exact("manipulation_power", {i}, ratio(h, total * fm)));
    }
    return out;
  }

  if (opts.samples == 0) throw DomainError("sampled mode needs samples >= 1");
  auto partial = map_chunks<std::vector<std::uint64_t>>(
      opts.samples, kSampleChunk, opts.workers, [&](const ChunkRange& r) {
        Rng rng(derive_seed(opts.seed, r.index));
        std::vector<std::uint64_t> hits(n, 0);
        std::vector<OrderIndex> x(n);
        for (std::uint64_t s = r.begin; s < r.end; ++s) {
          for (auto& o : x) o = static_cast<OrderIndex>(rng.below(fm));
          const Alt honest = f(x);
          for (int i = 0; i < n; ++i) {
            const OrderIndex own = x[i];
            x[i] = static_cast<OrderIndex>(rng.below(fm));
            const Alt lied = f(x);
            if (t.prefers(own, lied, honest)) ++hits[i];
            x[i] = own;
          }
        }
        return hits;
      });
  for (int i = 0; i < n; ++i) {
    std::uint64_t h = 0;
    for (const auto& p : partial) h += p[i];
    out.push_back(MetricReport::make_bernoulli("manipulation_power", {i}, h, opts.samples, opts.seed));
  }
  return out;
}

MetricReport manipulation_power(const Scf& f, int voter, const Options& opts) {
  if (voter < 0 || voter >= f.voters()) throw DomainError("manipulation_power: voter out of range");
  return manipulation_powers(f, opts).at(voter);
}

MetricReport manipulation_power_total(const Scf& f, const Options& opts) {
  const auto per_voter = manipulation_powers(f, opts);
  if (per_voter.front().exact) {
    Rational sum = 0;
    for (const auto& r : per_voter) sum += r.value;
    return MetricReport::make_exact("manipulation_power_total", {}, sum);
  }
  // Voters' estimates share draws; the CI is a conservative sum of half-widths.
  double est = 0.0;
  double half = 0.0;
  for (const auto& r : per_voter) {
    est += r.estimate;
    half += r.ci95;
  }
  return MetricReport::make_sampled("manipulation_power_total", {}, est, half, opts.samples,
                                    opts.seed);
}

MetricReport mab(const Scf& f, Alt a, Alt b, const Options& opts) {
  require_pair(f, a, b);
  const int n = f.voters();
  if (use_exact(opts, n, 3, "mab"))
    return MetricReport::make_exact("mab", {a, b}, mab_exact(column_stats(f, a, b, opts.workers)));
  if (opts.samples == 0) throw DomainError("sampled mode needs samples >= 1");
  const auto orders = completion_orders(a, b);
  auto partial = map_chunks<std::uint64_t>(
      opts.samples, kSampleChunk, opts.workers, [&](const ChunkRange& r) {
        Rng rng(derive_seed(opts.seed, r.index));
        std::uint64_t hits = 0;
        std::vector<OrderIndex> x(n), y(n);
        for (std::uint64_t s = r.begin; s < r.end; ++s) {
          for (int v = 0; v < n; ++v) {
            const auto bit = rng.below(2);
            x[v] = orders[bit][rng.below(3)];
            y[v] = orders[bit][rng.below(3)];
          }
          if (f(x) == a && f(y) == b) ++hits;
        }
        return hits;
      });
  std::uint64_t hits = 0;
  for (auto h : partial) hits += h;
  return MetricReport::make_bernoulli("mab", {a, b}, hits, opts.samples, opts.seed);
}

MetricReport nab(const Scf& f, Alt a, Alt b, const Options& opts) {
  require_pair(f, a, b);
  const int n = f.voters();
  if (use_exact(opts, n, 3, "nab"))
    return MetricReport::make_exact("nab", {a, b}, nab_exact(column_stats(f, a, b, opts.workers)));
  if (opts.samples == 0) throw DomainError("sampled mode needs samples >= 1");

  // Nested estimate: sampled columns, each scored by exact completions
  // when 3^n is small and by kInner completion draws otherwise.
  constexpr std::uint64_t kInner = 256;
  const bool inner_exact = n <= 6;
  const std::uint64_t inner = inner_exact ? pow3(n) : kInner;
  const std::uint64_t outer = std::max<std::uint64_t>(1, opts.samples / inner);
  const auto orders = completion_orders(a, b);
  struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  auto partial = map_chunks<Moments>(outer, 256, opts.workers, [&](const ChunkRange& r) {
    Rng rng(derive_seed(opts.seed, r.index));
    Moments mo;
    std::vector<OrderIndex> x(n);
    for (std::uint64_t s = r.begin; s < r.end; ++s) {
      const std::uint64_t z = rng.below(pow2(n));
      std::uint64_t ca = 0;
      std::uint64_t cb = 0;
      for (std::uint64_t k = 0; k < inner; ++k) {
        std::uint64_t code = k;
        for (int v = 0; v < n; ++v) {
          std::uint64_t d;
          if (inner_exact) {
            d = code % 3;
            code /= 3;
          } else {
            d = rng.below(3);
          }
          x[v] = orders[(z >> v) & 1U][d];
        }
        const Alt out = f(x);
        ca += out == a;
        cb += out == b;
      }
      const double value = static_cast<double>(std::min(ca, cb)) / static_cast<double>(inner);
      mo.sum += value;
      mo.sum_sq += value * value;
    }
    return mo;
  });
  Moments total;
  for (const auto& p : partial) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
  }
  const double cnt = static_cast<double>(outer);
  const double mean = total.sum / cnt;
  const double var = outer > 1 ? std::max(0.0, (total.sum_sq - cnt * mean * mean) / (cnt - 1)) : 0.0;
  return MetricReport::make_sampled("nab", {a, b}, mean, kZ95 * std::sqrt(var / cnt),
                                    outer * inner, opts.seed);
}

}  // namespace qgs
