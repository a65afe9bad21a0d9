#include "qgs/arrow.hpp"

#include "qgs/manip.hpp"
#include "qgs/parallel.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <memory>

namespace qgs {

namespace {

constexpr std::uint64_t kProfileChunk = 1ULL << 14;

struct EventCounts {
  bool exact = true;
  std::vector<std::uint64_t> hits;
  std::uint64_t total = 0;
};

// fn(orders, hits) adds the events observed at one profile. Exact mode
// enumerates every profile; sampled mode draws opts.samples uniform ones.
template <class Fn>
EventCounts count_events(int n, int m, int slots, const Options& opts, const char* what, Fn fn) {
  EventCounts out;
  out.hits.assign(slots, 0);
  const std::uint64_t fm = factorial(m);
  std::vector<std::vector<std::uint64_t>> partial;
  if (use_exact(opts, n, m, what)) {
    out.total = profile_count(n, m);
    partial = map_chunks<std::vector<std::uint64_t>>(
        out.total, kProfileChunk, opts.workers, [&](const ChunkRange& r) {
          std::vector<std::uint64_t> hits(slots, 0);
          std::vector<OrderIndex> x(n);
          decode_profile(r.begin, m, x);
          for (std::uint64_t i = r.begin; i < r.end; ++i) {
            fn(std::span<const OrderIndex>(x), hits.data());
            for (int v = 0; v < n; ++v) {
              if (++x[v] < fm) break;
              x[v] = 0;
            }
          }
          return hits;
        });
  } else {
    if (opts.samples == 0) throw DomainError(std::string(what) + ": sampled mode needs samples >= 1");
    out.exact = false;
    out.total = opts.samples;
    partial = map_chunks<std::vector<std::uint64_t>>(
        opts.samples, kSampleChunk, opts.workers, [&](const ChunkRange& r) {
          Rng rng(derive_seed(opts.seed, r.index));
          std::vector<std::uint64_t> hits(slots, 0);
          std::vector<OrderIndex> x(n);
          for (std::uint64_t s = r.begin; s < r.end; ++s) {
            for (auto& o : x) o = static_cast<OrderIndex>(rng.below(fm));
            fn(std::span<const OrderIndex>(x), hits.data());
          }
          return hits;
        });
  }
  for (const auto& p : partial)
    for (int s = 0; s < slots; ++s) out.hits[s] += p[s];
  return out;
}

MetricReport fraction_report(const char* metric, std::vector<int> indices, const EventCounts& c,
                             std::uint64_t hits, std::uint64_t per_profile, const Options& opts) {
  if (c.exact) return MetricReport::make_exact(metric, std::move(indices), ratio(hits, c.total * per_profile));
  if (per_profile == 1)
    return MetricReport::make_bernoulli(metric, std::move(indices), hits, c.total, opts.seed);
  const double p = static_cast<double>(hits) / static_cast<double>(c.total * per_profile);
  const double half = kZ95 * std::sqrt(p * (1 - p) / static_cast<double>(c.total));
  return MetricReport::make_sampled(metric, std::move(indices), p, half, c.total, opts.seed);
}

// Masks over pair bits: pairs where `a` comes first, and where it comes second.
struct WinnerMasks {
  std::array<std::uint32_t, kMaxAlternatives> first{};
  std::array<std::uint32_t, kMaxAlternatives> second{};
};

const WinnerMasks& winner_masks(int m) {
  static const auto all = [] {
    std::array<WinnerMasks, kMaxAlternatives + 1> t{};
    for (int mm = 2; mm <= kMaxAlternatives; ++mm)
      for (int p = 0; p < pair_count(mm); ++p) {
        const auto [a, b] = pair_at(mm, p);
        t[mm].first[a] |= 1U << p;
        t[mm].second[b] |= 1U << p;
      }
    return t;
  }();
  return all.at(m);
}

double standard_error(const MetricReport& r) {
  if (r.exact || r.samples == 0) return 0.0;
  const double p = r.estimate;
  return std::sqrt(std::max(0.0, p * (1 - p)) / static_cast<double>(r.samples));
}

bool within_three_se(double diff, double se, double* z) {
  if (se <= 0.0) {
    *z = 0.0;
    return std::abs(diff) <= 1e-12;
  }
  *z = diff / se;
  return std::abs(*z) <= 3.0;
}

}  // namespace

int bool_table_voters(const BoolTable& g) {
  if (g.empty() || !std::has_single_bit(g.size())) throw DomainError("Boolean table length must be 2^n");
  return std::countr_zero(g.size());
}

bool is_odd(const BoolTable& g) {
  const int n = bool_table_voters(g);
  const std::uint64_t mask = pow2(n) - 1;
  for (std::uint64_t z = 0; z < g.size(); ++z)
    if (g[z] > 1 || g[z] == g[~z & mask]) return false;
  return true;
}

BoolTable dictator_table(int n, int voter) {
  if (voter < 0 || voter >= n) throw DomainError("dictator_table: voter out of range");
  BoolTable g(pow2(n));
  for (std::uint64_t z = 0; z < g.size(); ++z) g[z] = (z >> voter) & 1U;
  return g;
}

BoolTable majority_table(int n) {
  if (n < 1) throw DomainError("majority_table: n must be positive");
  BoolTable g(pow2(n));
  for (std::uint64_t z = 0; z < g.size(); ++z) {
    const int twice = 2 * std::popcount(z);
    g[z] = twice == n ? (z & 1U) : twice > n;
  }
  return g;
}

BoolTable parity_table(int n) {
  BoolTable g(pow2(n));
  for (std::uint64_t z = 0; z < g.size(); ++z) g[z] = std::popcount(z) & 1;
  return g;
}

BoolTable random_table(int n, Rng& rng) {
  BoolTable g(pow2(n));
  for (auto& v : g) v = static_cast<std::uint8_t>(rng.below(2));
  return g;
}

BoolTable random_odd_table(int n, Rng& rng) {
  if (n < 1) throw DomainError("random_odd_table: n must be positive");
  BoolTable g(pow2(n));
  const std::uint64_t half = pow2(n - 1);
  const std::uint64_t mask = pow2(n) - 1;
  for (std::uint64_t z = 0; z < half; ++z) {
    g[z] = static_cast<std::uint8_t>(rng.below(2));
    g[~z & mask] = 1 - g[z];
  }
  return g;
}

GswfIia::GswfIia(int n, int m, std::vector<BoolTable> tables)
    : n_(n), m_(m), tables_(std::move(tables)) {
  if (n < 1 || n > 24) throw DomainError("GSWF: voter count out of range");
  if (m < 2 || m > kMaxAlternatives) throw DomainError("GSWF: unsupported number of alternatives");
  if (static_cast<int>(tables_.size()) != pair_count(m)) throw DomainError("GSWF: needs C(m,2) tables");
  for (const auto& t : tables_) {
    if (t.size() != pow2(n)) throw DomainError("GSWF: table length must be 2^n");
    for (auto v : t)
      if (v > 1) throw DomainError("GSWF: table entries must be 0 or 1");
  }
}

bool GswfIia::prefers(Alt a, Alt b, std::uint64_t column) const {
  if (a == b || a >= m_ || b >= m_) throw DomainError("GSWF: invalid pair");
  if (column >= pow2(n_)) throw DomainError("GSWF: column out of range");
  if (a < b) return tables_[pair_index(m_, a, b)][column] != 0;
  const std::uint64_t flipped = ~column & (pow2(n_) - 1);
  return tables_[pair_index(m_, b, a)][flipped] == 0;
}

std::uint32_t GswfIia::outcome(std::span<const OrderIndex> orders) const {
  const OrderTable& t = order_table(m_);
  std::array<std::uint32_t, 32> cols{};
  const int pairs = pair_count(m_);
  for (int v = 0; v < n_; ++v) {
    const std::uint32_t bits = t.pair_bits(orders[v]);
    for (int p = 0; p < pairs; ++p) cols[p] |= ((bits >> p) & 1U) << v;
  }
  std::uint32_t out = 0;
  for (int p = 0; p < pairs; ++p)
    if (tables_[p][cols[p]]) out |= 1U << p;
  return out;
}

GswfIia NeutralGswf::gswf() const {
  const int n = bool_table_voters(g);
  return GswfIia(n, m, std::vector<BoolTable>(pair_count(m), g));
}

GswfIia dictator_gswf(int n, int m, int voter) {
  return GswfIia(n, m, std::vector<BoolTable>(pair_count(m), dictator_table(n, voter)));
}

GswfIia random_gswf(int n, int m, Rng& rng) {
  std::vector<BoolTable> tables;
  for (int p = 0; p < pair_count(m); ++p) tables.push_back(random_table(n, rng));
  return GswfIia(n, m, std::move(tables));
}

NeutralGswf neutral_tensor(const BoolTable& g, int m) {
  if (!is_odd(g)) throw DomainError("neutral_tensor: g must be odd");
  if (m < 2 || m > kMaxAlternatives) throw DomainError("neutral_tensor: unsupported m");
  return NeutralGswf{g, m};
}

GswfIia restrict_gswf(const GswfIia& g, std::span<const Alt> subset) {
  const int k = static_cast<int>(subset.size());
  if (k < 2) throw DomainError("restrict_gswf: subset needs at least two alternatives");
  std::array<bool, kMaxAlternatives> seen{};
  for (Alt a : subset) {
    if (a >= g.alternatives() || seen[a]) throw DomainError("restrict_gswf: invalid subset");
    seen[a] = true;
  }
  const std::uint64_t size = pow2(g.voters());
  std::vector<BoolTable> tables;
  for (int p = 0; p < pair_count(k); ++p) {
    const auto [i, j] = pair_at(k, p);
    BoolTable t(size);
    for (std::uint64_t z = 0; z < size; ++z) t[z] = g.prefers(subset[i], subset[j], z);
    tables.push_back(std::move(t));
  }
  return GswfIia(g.voters(), k, std::move(tables));
}

bool is_neutral(const GswfIia& g) {
  const auto& first = g.table(0);
  if (!is_odd(first)) return false;
  return std::all_of(g.tables().begin(), g.tables().end(),
                     [&](const BoolTable& t) { return t == first; });
}

std::optional<Alt> gcw_of_outcome(std::uint32_t outcome, int m) {
  const WinnerMasks& w = winner_masks(m);
  for (int a = 0; a < m; ++a)
    if ((outcome & w.first[a]) == w.first[a] && (outcome & w.second[a]) == 0)
      return static_cast<Alt>(a);
  return std::nullopt;
}

std::optional<Alt> gcl_of_outcome(std::uint32_t outcome, int m) {
  const WinnerMasks& w = winner_masks(m);
  for (int a = 0; a < m; ++a)
    if ((outcome & w.first[a]) == 0 && (outcome & w.second[a]) == w.second[a])
      return static_cast<Alt>(a);
  return std::nullopt;
}

std::optional<Alt> gcw_winner_at(const GswfIia& g, std::span<const OrderIndex> orders) {
  if (static_cast<int>(orders.size()) != g.voters()) throw DomainError("GSWF: profile has wrong voter count");
  return gcw_of_outcome(g.outcome(orders), g.alternatives());
}

std::optional<Alt> gcw_winner_at(const GswfIia& g, const Profile& x) {
  if (x.alternatives() != g.alternatives()) throw DomainError("GSWF: profile has wrong m");
  const auto orders = x.order_indices();
  return gcw_winner_at(g, orders);
}

bool is_cyclic3(std::uint32_t outcome) {
  // Each alternative wins exactly one of its two contests.
  const WinnerMasks& w = winner_masks(3);
  for (int a = 0; a < 3; ++a) {
    const int wins = std::popcount(outcome & w.first[a]) + std::popcount(~outcome & w.second[a] & 7U);
    if (wins != 1) return false;
  }
  return true;
}

GswfIia gswf_from_scf(const Scf& f, int tie_voter, int workers) {
  if (f.alternatives() != 3) throw UnsupportedError("gswf_from_scf requires m = 3");
  const int n = f.voters();
  if (tie_voter < 0 || tie_voter >= n) throw DomainError("gswf_from_scf: tie voter out of range");
  const Scf table = materialize(f, workers);
  std::vector<BoolTable> tables;
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    const auto stats = column_stats(table, a, b, workers);
    BoolTable t(pow2(n));
    for (const auto& s : stats) {
      if (s.count_a != s.count_b)
        t[s.column] = s.count_a > s.count_b;
      else
        t[s.column] = (s.column >> tie_voter) & 1U;
    }
    tables.push_back(std::move(t));
  }
  return GswfIia(n, 3, std::move(tables));
}

Scf scf_from_gswf(const GswfIia& g, int fallback_voter) {
  const int n = g.voters();
  const int m = g.alternatives();
  if (m < 3) throw DomainError("scf_from_gswf: needs at least three alternatives");
  if (fallback_voter < 0 || fallback_voter >= n) throw DomainError("scf_from_gswf: fallback voter out of range");
  auto shared = std::make_shared<const GswfIia>(g);
  return Scf::custom(n, m, "gcw_or_top(" + std::to_string(fallback_voter) + ")",
                     [shared, fallback_voter, m](std::span<const OrderIndex> orders) -> Alt {
                       if (auto w = gcw_winner_at(*shared, orders)) return *w;
                       return order_table(m).top(orders[fallback_voter]);
                     });
}

MetricReport nt(const GswfIia& g, const Options& opts) {
  if (g.alternatives() != 3) throw UnsupportedError("nt requires m = 3; use ngcw");
  const auto c = count_events(g.voters(), 3, 1, opts, "nt",
                              [&](std::span<const OrderIndex> x, std::uint64_t* hits) {
                                hits[0] += is_cyclic3(g.outcome(x));
                              });
  return fraction_report("nt", {}, c, c.hits[0], 1, opts);
}

MetricReport ngcw(const GswfIia& g, const Options& opts) {
  const int m = g.alternatives();
  const auto c = count_events(g.voters(), m, 1, opts, "ngcw",
                              [&](std::span<const OrderIndex> x, std::uint64_t* hits) {
                                hits[0] += !gcw_of_outcome(g.outcome(x), m).has_value();
                              });
  return fraction_report("ngcw", {m}, c, c.hits[0], 1, opts);
}

MetricReport gcw(const GswfIia& g, const Options& opts) {
  MetricReport r = ngcw(g, opts);
  r.metric = "gcw";
  if (r.exact) {
    r.value = 1 - r.value;
    r.estimate = to_double(r.value);
  } else {
    r.estimate = 1.0 - r.estimate;
  }
  return r;
}

std::string TrMember::describe() const {
  switch (kind) {
    case Kind::Dictator: return "dictator(" + std::to_string(voter) + ")";
    case Kind::AntiDictator: return "anti_dictator(" + std::to_string(voter) + ")";
    case Kind::TopFixed: return "top_fixed(" + std::to_string(alternative) + ")";
    case Kind::BottomFixed: return "bottom_fixed(" + std::to_string(alternative) + ")";
  }
  return "?";
}

GswfIia TrMember::gswf(int n) const {
  const std::uint64_t size = pow2(n);
  std::vector<BoolTable> tables(3, BoolTable(size));
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    for (std::uint64_t z = 0; z < size; ++z) {
      std::uint8_t v = 0;
      switch (kind) {
        case Kind::Dictator: v = (z >> voter) & 1U; break;
        case Kind::AntiDictator: v = 1 - ((z >> voter) & 1U); break;
        case Kind::TopFixed:
        case Kind::BottomFixed: {
          const bool top = kind == Kind::TopFixed;
          if (a == alternative) v = top;
          else if (b == alternative) v = !top;
          else v = h.at(z);
          break;
        }
      }
      tables[p][z] = v;
    }
  }
  return GswfIia(n, 3, std::move(tables));
}

Tr3Distance dist_tr3(const GswfIia& g, const Options& opts) {
  if (g.alternatives() != 3) throw UnsupportedError("dist_tr3 requires m = 3");
  const int n = g.voters();
  const OrderTable& t = order_table(3);
  const WinnerMasks& w = winner_masks(3);
  // Candidate slots: dictators, anti-dictators, top-fixed a, bottom-fixed a.
  const int candidates = 2 * n + 6;
  const auto c = count_events(
      n, 3, 2 * candidates, opts, "dist_tr3", [&](std::span<const OrderIndex> x, std::uint64_t* hits) {
        const std::uint32_t out = g.outcome(x);
        std::uint64_t* bits = hits + candidates;
        for (int i = 0; i < n; ++i) {
          const std::uint32_t voter = t.pair_bits(x[i]);
          const std::uint32_t anti = ~voter & 7U;
          hits[i] += out != voter;
          bits[i] += std::popcount(out ^ voter);
          hits[n + i] += out != anti;
          bits[n + i] += std::popcount(out ^ anti);
        }
        for (int a = 0; a < 3; ++a) {
          // Losses of `a` as a fixed top, and wins as a fixed bottom.
          const int top_miss = std::popcount(~out & w.first[a]) + std::popcount(out & w.second[a]);
          const int bottom_miss = std::popcount(out & w.first[a]) + std::popcount(~out & w.second[a]);
          hits[2 * n + a] += top_miss != 0;
          bits[2 * n + a] += top_miss;
          hits[2 * n + 3 + a] += bottom_miss != 0;
          bits[2 * n + 3 + a] += bottom_miss;
        }
      });
  const auto begin = c.hits.begin();
  const int best = static_cast<int>(std::min_element(begin, begin + candidates) - begin);
  const int best_bit = static_cast<int>(std::min_element(begin + candidates, c.hits.end()) - begin);

  TrMember member;
  if (best < n) {
    member.kind = TrMember::Kind::Dictator;
    member.voter = best;
  } else if (best < 2 * n) {
    member.kind = TrMember::Kind::AntiDictator;
    member.voter = best - n;
  } else {
    const int a = (best - 2 * n) % 3;
    member.kind = best < 2 * n + 3 ? TrMember::Kind::TopFixed : TrMember::Kind::BottomFixed;
    member.alternative = static_cast<Alt>(a);
    const Alt u = a == 0 ? 1 : 0;
    const Alt v = a == 2 ? 1 : 2;
    member.h = g.table(pair_index(3, u, v));
  }
  Tr3Distance out;
  out.triple = fraction_report("dist_tr3", {}, c, c.hits[best], 1, opts);
  out.per_bit = fraction_report("dist_tr3_per_bit", {}, c, c.hits[best_bit], 3, opts);
  out.witness = std::move(member);
  return out;
}

std::uint64_t disagreement_count(const GswfIia& g, const GswfIia& h) {
  if (g.voters() != h.voters() || g.alternatives() != h.alternatives())
    throw DomainError("disagreement_count: shape mismatch");
  Options opts;
  opts.mode = Mode::Exact;
  const auto c = count_events(g.voters(), g.alternatives(), 1, opts, "disagreement_count",
                              [&](std::span<const OrderIndex> x, std::uint64_t* hits) {
                                hits[0] += g.outcome(x) != h.outcome(x);
                              });
  return c.hits[0];
}

Dict2Distance dist_dict2(const BoolTable& g) {
  const int n = bool_table_voters(g);
  Dict2Distance best{Rational(2), 0, false};
  for (int i = 0; i < n; ++i) {
    std::uint64_t miss = 0;
    for (std::uint64_t z = 0; z < g.size(); ++z) miss += g[z] != ((z >> i) & 1U);
    const Rational d = ratio(miss, g.size());
    const Rational anti = 1 - d;
    if (d < best.fraction) best = {d, i, false};
    if (anti < best.fraction) best = {anti, i, true};
  }
  return best;
}

CompositionReport check_composition(const GswfIia& g, int m1, const Options& opts) {
  const int m = g.alternatives();
  if (m1 < 2 || m - m1 < 2) throw DomainError("check_composition: both blocks need two alternatives");
  std::vector<Alt> lo(m1), hi(m - m1);
  for (int a = 0; a < m1; ++a) lo[a] = static_cast<Alt>(a);
  for (int a = m1; a < m; ++a) hi[a - m1] = static_cast<Alt>(a);
  const GswfIia first = restrict_gswf(g, lo);
  const GswfIia second = restrict_gswf(g, hi);
  const int n = g.voters();
  const OrderTable& t = order_table(m);
  const OrderTable& t1 = order_table(m1);
  const OrderTable& t2 = order_table(m - m1);
  // Block order of each full order: the restriction to each block.
  std::vector<OrderIndex> block1(t.size()), block2(t.size());
  for (OrderIndex o = 0; o < t.size(); ++o) {
    std::vector<Alt> r1, r2;
    for (int k = 0; k < m; ++k) {
      const Alt a = t.at(o, k);
      if (a < m1) r1.push_back(a);
      else r2.push_back(static_cast<Alt>(a - m1));
    }
    block1[o] = t1.index_of(r1);
    block2[o] = t2.index_of(r2);
  }
  // hits: [none1 & none2, none1, none2]
  const auto c = count_events(n, m, 3, opts, "composition",
                              [&](std::span<const OrderIndex> x, std::uint64_t* hits) {
                                std::array<OrderIndex, 24> x1{}, x2{};
                                for (int v = 0; v < n; ++v) {
                                  x1[v] = block1[x[v]];
                                  x2[v] = block2[x[v]];
                                }
                                const bool none1 = !gcw_of_outcome(first.outcome({x1.data(), static_cast<std::size_t>(n)}), m1);
                                const bool none2 = !gcw_of_outcome(second.outcome({x2.data(), static_cast<std::size_t>(n)}), m - m1);
                                hits[0] += none1 && none2;
                                hits[1] += none1;
                                hits[2] += none2;
                              });
  CompositionReport r;
  r.exact = c.exact;
  r.joint = fraction_report("ngcw_joint", {m1, m - m1}, c, c.hits[0], 1, opts);
  r.first = fraction_report("ngcw_block", {0, m1}, c, c.hits[1], 1, opts);
  r.second = fraction_report("ngcw_block", {m1, m}, c, c.hits[2], 1, opts);
  if (c.exact) {
    r.holds = BigInt(c.hits[0]) * c.total == BigInt(c.hits[1]) * c.hits[2];
    return r;
  }
  // Delta-method z-score for p11 - p1 p2 from the joint counts.
  const double N = static_cast<double>(c.total);
  const double p11 = c.hits[0] / N;
  const double p1 = c.hits[1] / N;
  const double p2 = c.hits[2] / N;
  const double p10 = p1 - p11;
  const double p01 = p2 - p11;
  const double p00 = 1.0 - p11 - p10 - p01;
  // u = e1 e2 - p2 e1 - p1 e2 on each of the four cells.
  const double u11 = 1 - p2 - p1, u10 = -p2, u01 = -p1, u00 = 0.0;
  const double mean = p11 * u11 + p10 * u10 + p01 * u01 + p00 * u00;
  const double second_moment = p11 * u11 * u11 + p10 * u10 * u10 + p01 * u01 * u01;
  const double se = std::sqrt(std::max(0.0, second_moment - mean * mean) / N);
  r.holds = within_three_se(p11 - p1 * p2, se, &r.z_score);
  return r;
}

IdentityReport check_identities(const BoolTable& g, const Options& opts) {
  if (!is_odd(g)) throw DomainError("check_identities: g must be odd");
  IdentityReport r;
  auto sub = [&](std::uint64_t k) {
    Options o = opts;
    o.seed = derive_seed(opts.seed, k);
    return o;
  };
  const GswfIia g6 = neutral_tensor(g, 6).gswf();
  r.gcw3 = gcw(neutral_tensor(g, 3).gswf(), sub(3));
  r.gcw4 = gcw(neutral_tensor(g, 4).gswf(), sub(4));
  r.gcw5 = gcw(neutral_tensor(g, 5).gswf(), sub(5));
  r.gcw6 = gcw(g6, sub(6));

  r.four_exact = r.gcw3.exact && r.gcw4.exact;
  if (r.four_exact) {
    r.four_holds = r.gcw4.value == 2 * r.gcw3.value - 1;
  } else {
    const double diff = r.gcw4.as_double() - (2 * r.gcw3.as_double() - 1);
    const double se = std::hypot(standard_error(r.gcw4), 2 * standard_error(r.gcw3));
    r.four_holds = within_three_se(diff, se, &r.four_z);
  }

  r.five_exact = r.gcw3.exact && r.gcw5.exact && r.gcw6.exact;
  if (r.five_exact) {
    r.five_holds = r.gcw5.value == r.gcw6.value / 3 + 5 * r.gcw3.value / 3 - 1;
  } else {
    const double diff =
        r.gcw5.as_double() - (r.gcw6.as_double() / 3 + 5 * r.gcw3.as_double() / 3 - 1);
    const double se = std::sqrt(std::pow(standard_error(r.gcw5), 2) +
                                std::pow(standard_error(r.gcw6) / 3, 2) +
                                std::pow(5 * standard_error(r.gcw3) / 3, 2));
    r.five_holds = within_three_se(diff, se, &r.five_z);
  }
  r.composition = check_composition(g6, 3, sub(7));
  return r;
}

ChainReport check_reduction_chain(const Scf& f, int tie_voter, const Options& opts) {
  if (f.alternatives() != 3) throw UnsupportedError("check_reduction_chain requires m = 3");
  Options exact = opts;
  exact.mode = Mode::Exact;
  use_exact(exact, f.voters(), 3, "check_reduction_chain");
  const Scf table = materialize(f, opts.workers, opts.budget);

  ChainReport r;
  r.eps1 = 0;
  r.nab_sum = 0;
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    const auto stats = column_stats(table, a, b, opts.workers);
    r.mab.push_back(mab_exact(stats));
    r.nab.push_back(nab_exact(stats));
    r.eps1 = std::max(r.eps1, r.mab.back());
    r.nab_sum += r.nab.back();
  }
  r.dist_dict = dist_to_dictatorship(table, exact).value.value;
  r.dist_antidict = dist_to_antidictatorship(table, exact).value.value;
  r.range_min = range_min_prob(table, exact).value.value;
  r.eps2 = std::min({r.dist_dict, r.dist_antidict, r.range_min});

  const GswfIia g = gswf_from_scf(table, tie_voter, opts.workers);
  r.nt = nt(g, exact).value;
  r.ngcw = ngcw(g, exact).value;
  r.dist_tr3 = dist_tr3(g, exact).triple.value;

  r.nt_le_nab_sum = r.nt <= r.nab_sum;
  r.nab_le_sqrt_mab = true;
  r.sqrt_mab_le_bound = true;
  for (int p = 0; p < 3; ++p) {
    r.nab_le_sqrt_mab = r.nab_le_sqrt_mab && r.nab[p] * r.nab[p] <= r.mab[p];
    r.sqrt_mab_le_bound = r.sqrt_mab_le_bound && r.mab[p] <= r.eps1;
  }
  r.nab_sum_le_bound = le_times_sqrt(r.nab_sum, 3, r.eps1);
  r.nt_le_bound = le_times_sqrt(r.nt, 3, r.eps1);
  r.dist_ge_bound = le_times_sqrt(r.eps2 - r.dist_tr3, 3, r.eps1);
  return r;
}

ConverseReport check_converse(const GswfIia& g, int fallback_voter, const Options& opts) {
  if (g.alternatives() != 3) throw UnsupportedError("check_converse requires m = 3");
  Options exact = opts;
  exact.mode = Mode::Exact;
  ConverseReport r;
  r.ngcw = ngcw(g, exact).value;
  const Scf f = materialize(scf_from_gswf(g, fallback_voter), opts.workers, opts.budget);
  r.max_mab = 0;
  for (int p = 0; p < 3; ++p) {
    const auto [a, b] = pair_at(3, p);
    r.max_mab = std::max(r.max_mab, mab_exact(column_stats(f, a, b, opts.workers)));
  }
  r.holds = r.max_mab <= 2 * r.ngcw;
  return r;
}

}  // namespace qgs
