#include "qgs/scf.hpp"

#include "qgs/parallel.hpp"
#include "qgs/random.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

namespace qgs {

struct Scf::Impl {
  int n = 0;
  int m = 0;
  RuleKind kind = RuleKind::Custom;
  std::string name;
  RuleParams params;
  std::vector<Alt> table;
  ScfEvaluator custom;
};

namespace {

constexpr std::uint64_t kProfileChunk = 1ULL << 14;

Alt plurality_winner(const OrderTable& t, std::span<const OrderIndex> orders) {
  std::array<int, kMaxAlternatives> score{};
  for (OrderIndex o : orders) ++score[t.top(o)];
  const int m = t.alternatives();
  return static_cast<Alt>(std::max_element(score.begin(), score.begin() + m) - score.begin());
}

Alt borda_winner(const OrderTable& t, std::span<const OrderIndex> orders) {
  const int m = t.alternatives();
  std::array<int, kMaxAlternatives> score{};
  for (OrderIndex o : orders)
    for (int r = 0; r < m; ++r) score[t.at(o, r)] += m - 1 - r;
  return static_cast<Alt>(std::max_element(score.begin(), score.begin() + m) - score.begin());
}

Alt majority_or_first_top(const OrderTable& t, std::span<const OrderIndex> orders) {
  const int m = t.alternatives();
  const int n = static_cast<int>(orders.size());
  for (int a = 0; a < m; ++a) {
    bool beats_all = true;
    for (int b = 0; b < m && beats_all; ++b) {
      if (a == b) continue;
      int support = 0;
      for (OrderIndex o : orders)
        if (t.prefers(o, static_cast<Alt>(a), static_cast<Alt>(b))) ++support;
      beats_all = 2 * support > n;
    }
    if (beats_all) return static_cast<Alt>(a);
  }
  return t.top(orders[0]);
}

void check_shape(int n, int m) {
  if (n < 1) throw DomainError("SCF needs at least one voter");
  if (m < 2 || m > kMaxAlternatives) throw DomainError("SCF: unsupported number of alternatives");
}

std::vector<Alt> random_outputs(int n, int m, std::uint64_t seed) {
  const std::uint64_t total = profile_count(n, m);
  if (!within_budget(n, m, kDefaultExactBudget))
    throw BudgetError("random_table: profile space too large to materialize");
  Rng rng(derive_seed(seed, 0x5c3f));
  std::vector<Alt> out(total);
  for (auto& a : out) a = static_cast<Alt>(rng.below(static_cast<std::uint64_t>(m)));
  return out;
}

}  // namespace

Scf Scf::from_table(int n, int m, std::vector<Alt> outputs, std::string name) {
  check_shape(n, m);
  if (outputs.size() != profile_count(n, m)) throw DomainError("SCF table has the wrong length");
  for (Alt a : outputs)
    if (a >= m) throw DomainError("SCF table output out of range");
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->m = m;
  impl->kind = RuleKind::Table;
  impl->name = std::move(name);
  impl->table = std::move(outputs);
  return Scf(std::move(impl));
}

Scf Scf::custom(int n, int m, std::string name, ScfEvaluator eval) {
  check_shape(n, m);
  auto impl = std::make_shared<Impl>();
  impl->n = n;
  impl->m = m;
  impl->kind = RuleKind::Custom;
  impl->name = std::move(name);
  impl->custom = std::move(eval);
  return Scf(std::move(impl));
}

int Scf::voters() const { return impl_->n; }
int Scf::alternatives() const { return impl_->m; }
RuleKind Scf::kind() const { return impl_->kind; }
const std::string& Scf::name() const { return impl_->name; }
bool Scf::has_table() const { return !impl_->table.empty(); }
std::span<const Alt> Scf::outputs() const { return impl_->table; }

Alt Scf::operator()(std::span<const OrderIndex> orders) const {
  const Impl& f = *impl_;
  if (static_cast<int>(orders.size()) != f.n) throw DomainError("SCF: profile has wrong voter count");
  if (!f.table.empty()) return f.table[encode_profile(orders, f.m)];
  const OrderTable& t = order_table(f.m);
  switch (f.kind) {
    case RuleKind::Dictatorship: return t.top(orders[f.params.voter]);
    case RuleKind::AntiDictatorship: return t.bottom(orders[f.params.voter]);
    case RuleKind::Constant: return f.params.alternative;
    case RuleKind::Plurality: return plurality_winner(t, orders);
    case RuleKind::Borda: return borda_winner(t, orders);
    case RuleKind::PairwiseMajorityFallback: return majority_or_first_top(t, orders);
    case RuleKind::Custom: return f.custom(orders);
    case RuleKind::RandomTable:
    case RuleKind::Table: break;
  }
  throw std::logic_error("SCF: table-backed rule without a table");
}

Alt Scf::operator()(const Profile& p) const {
  if (p.alternatives() != impl_->m) throw DomainError("SCF: profile has wrong m");
  const auto orders = p.order_indices();
  return (*this)(orders);
}

const std::vector<std::string>& zoo_rule_names() {
  static const std::vector<std::string> names = {
      "dictatorship", "anti_dictatorship", "constant", "plurality",
      "borda", "pairwise_majority_fallback", "random_table"};
  return names;
}

Scf zoo_make(std::string_view name, int n, int m, const RuleParams& params) {
  check_shape(n, m);
  auto impl = std::make_shared<Scf::Impl>();
  impl->n = n;
  impl->m = m;
  impl->params = params;
  if (name == "dictatorship" || name == "anti_dictatorship") {
    if (params.voter < 0 || params.voter >= n) throw DomainError("dictator index out of range");
    impl->kind = name == "dictatorship" ? RuleKind::Dictatorship : RuleKind::AntiDictatorship;
    impl->name = std::string(name) + "(" + std::to_string(params.voter) + ")";
  } else if (name == "constant") {
    if (params.alternative >= m) throw DomainError("constant alternative out of range");
    impl->kind = RuleKind::Constant;
    impl->name = "constant(" + std::to_string(params.alternative) + ")";
  } else if (name == "plurality") {
    impl->kind = RuleKind::Plurality;
    impl->name = "plurality";
  } else if (name == "borda") {
    impl->kind = RuleKind::Borda;
    impl->name = "borda";
  } else if (name == "pairwise_majority_fallback") {
    impl->kind = RuleKind::PairwiseMajorityFallback;
    impl->name = "pairwise_majority_fallback";
  } else if (name == "random_table") {
    impl->kind = RuleKind::RandomTable;
    impl->name = "random_table(" + std::to_string(params.seed) + ")";
    impl->table = random_outputs(n, m, params.seed);
  } else {
    throw DomainError("unknown SCF rule: " + std::string(name));
  }
  return Scf(std::move(impl));
}

Scf zoo_make_spec(std::string_view spec, int n, int m) {
  std::string_view name = spec;
  std::string_view arg;
  if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
    name = spec.substr(0, colon);
    arg = spec.substr(colon + 1);
  } else if (const auto paren = spec.find('('); paren != std::string_view::npos) {
    if (spec.back() != ')') throw DomainError("malformed rule spec: " + std::string(spec));
    name = spec.substr(0, paren);
    arg = spec.substr(paren + 1, spec.size() - paren - 2);
  }
  RuleParams params;
  if (!arg.empty()) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc{} || ptr != arg.data() + arg.size())
      throw DomainError("malformed rule parameter: " + std::string(spec));
    if (name == "constant") {
      if (value >= static_cast<std::uint64_t>(m)) throw DomainError("constant alternative out of range");
      params.alternative = static_cast<Alt>(value);
    } else if (name == "random_table") {
      params.seed = value;
    } else {
      if (value >= static_cast<std::uint64_t>(n)) throw DomainError("dictator index out of range");
      params.voter = static_cast<int>(value);
    }
  }
  return zoo_make(name, n, m, params);
}

std::vector<Scf> zoo_catalogue(int n, int m) {
  std::vector<Scf> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(zoo_make("dictatorship", n, m, {.voter = i}));
    out.push_back(zoo_make("anti_dictatorship", n, m, {.voter = i}));
  }
  for (int a = 0; a < m; ++a)
    out.push_back(zoo_make("constant", n, m, {.alternative = static_cast<Alt>(a)}));
  out.push_back(zoo_make("plurality", n, m));
  out.push_back(zoo_make("borda", n, m));
  out.push_back(zoo_make("pairwise_majority_fallback", n, m));
  return out;
}

Scf materialize(const Scf& f, int workers, std::uint64_t budget) {
  if (f.has_table()) return f;
  const int n = f.voters();
  const int m = f.alternatives();
  if (!within_budget(n, m, budget))
    throw BudgetError("materialize: (m!)^n profiles exceed the enumeration budget");
  const std::uint64_t total = profile_count(n, m);
  std::vector<Alt> out(total);
  map_chunks<int>(total, kProfileChunk, workers, [&](const ChunkRange& r) {
    std::vector<OrderIndex> orders(n);
    for (std::uint64_t x = r.begin; x < r.end; ++x) {
      decode_profile(x, m, orders);
      out[x] = f(orders);
    }
    return 0;
  });
  return Scf::from_table(n, m, std::move(out), f.name());
}

Scf materialize_if_small(const Scf& f, const Options& opts) {
  if (f.has_table() || opts.mode == Mode::Sampled ||
      !within_budget(f.voters(), f.alternatives(), opts.budget))
    return f;
  return materialize(f, opts.workers, opts.budget);
}

namespace {

// Counts, per slot, profiles where pred(slot, orders, outcome) holds.
template <class Pred>
std::vector<std::uint64_t> count_exact(const Scf& table, int slots, int workers, Pred pred) {
  const int n = table.voters();
  const int m = table.alternatives();
  const auto outputs = table.outputs();
  const std::uint64_t total = outputs.size();
  auto partial = map_chunks<std::vector<std::uint64_t>>(
      total, kProfileChunk, workers, [&](const ChunkRange& r) {
        std::vector<std::uint64_t> counts(slots, 0);
        std::vector<OrderIndex> orders(n);
        for (std::uint64_t x = r.begin; x < r.end; ++x) {
          decode_profile(x, m, orders);
          for (int s = 0; s < slots; ++s)
            if (pred(s, orders, outputs[x])) ++counts[s];
        }
        return counts;
      });
  std::vector<std::uint64_t> counts(slots, 0);
  for (const auto& p : partial)
    for (int s = 0; s < slots; ++s) counts[s] += p[s];
  return counts;
}

template <class Pred>
std::vector<std::uint64_t> count_sampled(const Scf& f, int slots, const Options& opts, Pred pred) {
  const int n = f.voters();
  const std::uint64_t orders_count = factorial(f.alternatives());
  auto partial = map_chunks<std::vector<std::uint64_t>>(
      opts.samples, kSampleChunk, opts.workers, [&](const ChunkRange& r) {
        Rng rng(derive_seed(opts.seed, r.index));
        std::vector<std::uint64_t> counts(slots, 0);
        std::vector<OrderIndex> orders(n);
        for (std::uint64_t s = r.begin; s < r.end; ++s) {
          for (auto& o : orders) o = static_cast<OrderIndex>(rng.below(orders_count));
          const Alt out = f(orders);
          for (int k = 0; k < slots; ++k)
            if (pred(k, orders, out)) ++counts[k];
        }
        return counts;
      });
  std::vector<std::uint64_t> counts(slots, 0);
  for (const auto& p : partial)
    for (int s = 0; s < slots; ++s) counts[s] += p[s];
  return counts;
}

// Minimum over slots of Pr[pred], with smallest-index tie-break.
template <class Pred>
ArgminFraction min_fraction(const Scf& f, int slots, const Options& opts, const char* metric,
                            Pred pred) {
  if (use_exact(opts, f.voters(), f.alternatives(), metric)) {
    const Scf table = materialize(f, opts.workers, opts.budget);
    const auto counts = count_exact(table, slots, opts.workers, pred);
    const int best = static_cast<int>(std::min_element(counts.begin(), counts.end()) - counts.begin());
    const std::uint64_t total = table.outputs().size();
    return {MetricReport::make_exact(metric, {best}, ratio(counts[best], total)), best};
  }
  if (opts.samples == 0) throw DomainError("sampled mode needs samples >= 1");
  const auto counts = count_sampled(f, slots, opts, pred);
  const int best = static_cast<int>(std::min_element(counts.begin(), counts.end()) - counts.begin());
  return {MetricReport::make_bernoulli(metric, {best}, counts[best], opts.samples, opts.seed), best};
}

}  // namespace

ArgminFraction dist_to_dictatorship(const Scf& f, const Options& opts) {
  const OrderTable& t = order_table(f.alternatives());
  return min_fraction(f, f.voters(), opts, "dist_to_dictatorship",
                      [&t](int i, std::span<const OrderIndex> x, Alt out) {
                        return out != t.top(x[i]);
                      });
}

ArgminFraction dist_to_antidictatorship(const Scf& f, const Options& opts) {
  const OrderTable& t = order_table(f.alternatives());
  return min_fraction(f, f.voters(), opts, "dist_to_antidictatorship",
                      [&t](int i, std::span<const OrderIndex> x, Alt out) {
                        return out != t.bottom(x[i]);
                      });
}

ArgminFraction range_min_prob(const Scf& f, const Options& opts) {
  return min_fraction(f, f.alternatives(), opts, "range_min_prob",
                      [](int a, std::span<const OrderIndex>, Alt out) { return out == a; });
}

namespace {

std::vector<std::vector<Alt>> all_permutations(int m) {
  std::vector<std::vector<Alt>> perms;
  std::vector<Alt> p(m);
  std::iota(p.begin(), p.end(), Alt{0});
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

// relabeled[k][o] = index of π_k∘o.
std::vector<std::vector<OrderIndex>> relabel_tables(int m, const std::vector<std::vector<Alt>>& perms) {
  const OrderTable& t = order_table(m);
  std::vector<std::vector<OrderIndex>> out(perms.size(), std::vector<OrderIndex>(t.size()));
  for (std::size_t k = 0; k < perms.size(); ++k)
    for (OrderIndex o = 0; o < t.size(); ++o) out[k][o] = t.relabel(o, perms[k]);
  return out;
}

struct Violation {
  std::uint64_t checks = 0;
  std::uint64_t first = UINT64_MAX;
};

SymmetryCheck finish(std::vector<Violation> parts, bool exhaustive) {
  SymmetryCheck out;
  out.exhaustive = exhaustive;
  for (const auto& p : parts) {
    out.checks += p.checks;
    if (p.first != UINT64_MAX && out.holds) {
      out.holds = false;
      out.witness_profile = p.first;
    }
  }
  return out;
}

}  // namespace

SymmetryCheck is_neutral(const Scf& f, const Options& opts) {
  const int n = f.voters();
  const int m = f.alternatives();
  const auto perms = all_permutations(m);
  const auto relabeled = relabel_tables(m, perms);
  Scf eval = f;
  auto check = [&](std::span<const OrderIndex> x, std::vector<OrderIndex>& y, Alt out,
                   std::size_t k) {
    for (int v = 0; v < n; ++v) y[v] = relabeled[k][x[v]];
    return eval(y) == perms[k][out];
  };
  if (use_exact(opts, n, m, "is_neutral")) {
    const Scf table = materialize(f, opts.workers, opts.budget);
    eval = table;
    const std::uint64_t total = table.outputs().size();
    return finish(map_chunks<Violation>(total, kProfileChunk, opts.workers,
                                        [&](const ChunkRange& r) {
                                          Violation v;
                                          std::vector<OrderIndex> x(n), y(n);
                                          for (std::uint64_t i = r.begin; i < r.end; ++i) {
                                            decode_profile(i, m, x);
                                            const Alt out = table.outputs()[i];
                                            for (std::size_t k = 1; k < perms.size(); ++k) {
                                              ++v.checks;
                                              if (!check(x, y, out, k) && v.first == UINT64_MAX)
                                                v.first = i;
                                            }
                                          }
                                          return v;
                                        }),
                  true);
  }
  const std::uint64_t orders_count = factorial(m);
  return finish(map_chunks<Violation>(opts.samples, kSampleChunk, opts.workers,
                                      [&](const ChunkRange& r) {
                                        Rng rng(derive_seed(opts.seed, r.index));
                                        Violation v;
                                        std::vector<OrderIndex> x(n), y(n);
                                        for (std::uint64_t s = r.begin; s < r.end; ++s) {
                                          for (auto& o : x)
                                            o = static_cast<OrderIndex>(rng.below(orders_count));
                                          const auto k = 1 + rng.below(perms.size() - 1);
                                          ++v.checks;
                                          if (!check(x, y, f(x), k) && v.first == UINT64_MAX)
                                            v.first = s;
                                        }
                                        return v;
                                      }),
                false);
}

SymmetryCheck is_anonymous(const Scf& f, const Options& opts) {
  const int n = f.voters();
  const int m = f.alternatives();
  if (n == 1) return SymmetryCheck{};
  // Adjacent transpositions generate the symmetric group on voters.
  Scf eval = f;
  auto check = [&](std::span<const OrderIndex> x, std::vector<OrderIndex>& y, Alt out, int v) {
    std::copy(x.begin(), x.end(), y.begin());
    std::swap(y[v], y[v + 1]);
    return eval(y) == out;
  };
  if (use_exact(opts, n, m, "is_anonymous")) {
    const Scf table = materialize(f, opts.workers, opts.budget);
    eval = table;
    const std::uint64_t total = table.outputs().size();
    return finish(map_chunks<Violation>(total, kProfileChunk, opts.workers,
                                        [&](const ChunkRange& r) {
                                          Violation viol;
                                          std::vector<OrderIndex> x(n), y(n);
                                          for (std::uint64_t i = r.begin; i < r.end; ++i) {
                                            decode_profile(i, m, x);
                                            for (int v = 0; v + 1 < n; ++v) {
                                              ++viol.checks;
                                              if (!check(x, y, table.outputs()[i], v) &&
                                                  viol.first == UINT64_MAX)
                                                viol.first = i;
                                            }
                                          }
                                          return viol;
                                        }),
                  true);
  }
  const std::uint64_t orders_count = factorial(m);
  return finish(map_chunks<Violation>(opts.samples, kSampleChunk, opts.workers,
                                      [&](const ChunkRange& r) {
                                        Rng rng(derive_seed(opts.seed, r.index));
                                        Violation viol;
                                        std::vector<OrderIndex> x(n), y(n);
                                        for (std::uint64_t s = r.begin; s < r.end; ++s) {
                                          for (auto& o : x)
                                            o = static_cast<OrderIndex>(rng.below(orders_count));
                                          // random voter permutation
                                          std::copy(x.begin(), x.end(), y.begin());
                                          for (int v = n - 1; v > 0; --v)
                                            std::swap(y[v], y[rng.below(v + 1)]);
                                          ++viol.checks;
                                          if (f(y) != f(x) && viol.first == UINT64_MAX)
                                            viol.first = s;
                                        }
                                        return viol;
                                      }),
                false);
}

}  // namespace qgs
