#pragma once

// Brute-force reference computations for the tests. Everything here works
// on plain rankings enumerated with std::next_permutation and never calls
// the library's index codecs or enumeration loops.

#include "qgs/arrow.hpp"
#include "qgs/rational.hpp"
#include "qgs/scf.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using qgs::Rational;
using Ranking = std::vector<int>;
using RProfile = std::vector<Ranking>;
using Rule = std::function<int(const RProfile&)>;

inline std::vector<Ranking> all_rankings(int m) {
  Ranking r(m);
  std::iota(r.begin(), r.end(), 0);
  std::vector<Ranking> out;
  do out.push_back(r);
  while (std::next_permutation(r.begin(), r.end()));
  return out;
}

// Voter 0 varies fastest.
inline std::vector<RProfile> all_profiles(int n, int m) {
  const auto rs = all_rankings(m);
  std::vector<RProfile> out;
  std::vector<std::size_t> digit(n, 0);
  while (true) {
    RProfile x;
    for (int v = 0; v < n; ++v) x.push_back(rs[digit[v]]);
    out.push_back(x);
    int v = 0;
    while (v < n && ++digit[v] == rs.size()) digit[v++] = 0;
    if (v == n) break;
  }
  return out;
}

inline int pos(const Ranking& r, int a) {
  return static_cast<int>(std::find(r.begin(), r.end(), a) - r.begin());
}
inline bool prefers(const Ranking& r, int a, int b) { return pos(r, a) < pos(r, b); }

inline int plurality(const RProfile& x, int m) {
  std::vector<int> score(m, 0);
  for (const auto& r : x) ++score[r[0]];
  int best = 0;
  for (int a = 1; a < m; ++a)
    if (score[a] > score[best]) best = a;
  return best;
}

inline int borda(const RProfile& x, int m) {
  std::vector<int> score(m, 0);
  for (const auto& r : x)
    for (int k = 0; k < m; ++k) score[r[k]] += m - 1 - k;
  int best = 0;
  for (int a = 1; a < m; ++a)
    if (score[a] > score[best]) best = a;
  return best;
}

/// Wraps a library SCF; the order index is the ranking's lexicographic rank.
inline Rule wrap(const qgs::Scf& f) {
  const int m = f.alternatives();
  auto rank = std::make_shared<std::map<Ranking, qgs::OrderIndex>>();
  const auto rs = all_rankings(m);
  for (std::size_t k = 0; k < rs.size(); ++k) (*rank)[rs[k]] = static_cast<qgs::OrderIndex>(k);
  return [f, rank](const RProfile& x) {
    std::vector<qgs::OrderIndex> idx;
    for (const auto& r : x) idx.push_back(rank->at(r));
    return static_cast<int>(f(idx));
  };
}

inline Rational frac(std::uint64_t num, std::uint64_t den) { return qgs::ratio(num, den); }

inline Rational manipulation_power(const Rule& f, int n, int m, int i) {
  const auto rs = all_rankings(m);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& x : all_profiles(n, m)) {
    const int honest = f(x);
    for (const auto& lie : rs) {
      RProfile y = x;
      y[i] = lie;
      hits += prefers(x[i], f(y), honest);
      ++total;
    }
  }
  return frac(hits, total);
}

inline std::uint64_t column_of(const RProfile& x, int a, int b) {
  std::uint64_t z = 0;
  for (std::size_t v = 0; v < x.size(); ++v)
    if (prefers(x[v], a, b)) z |= std::uint64_t{1} << v;
  return z;
}

/// Pr[F(x) = a, F(x') = b] over x uniform and x' uniform among profiles
/// sharing x's (a, b) column: every such pair enumerated.
inline Rational mab(const Rule& f, int n, int a, int b) {
  std::map<std::uint64_t, std::vector<int>> by_column;
  for (const auto& x : all_profiles(n, 3)) by_column[column_of(x, a, b)].push_back(f(x));
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& [z, outs] : by_column)
    for (int o1 : outs)
      for (int o2 : outs) {
        hits += o1 == a && o2 == b;
        ++total;
      }
  return frac(hits, total);
}

inline Rational nab(const Rule& f, int n, int a, int b) {
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> counts;
  std::map<std::uint64_t, std::uint64_t> size;
  for (const auto& x : all_profiles(n, 3)) {
    const auto z = column_of(x, a, b);
    const int o = f(x);
    counts[z].first += o == a;
    counts[z].second += o == b;
    ++size[z];
  }
  Rational sum = 0;
  for (const auto& [z, c] : counts) sum += frac(std::min(c.first, c.second), size[z]);
  return sum / static_cast<int>(counts.size());
}

inline Rational dist_to_family(const Rule& f, int n, int m, bool bottom) {
  Rational best = 2;
  const auto xs = all_profiles(n, m);
  for (int i = 0; i < n; ++i) {
    std::uint64_t miss = 0;
    for (const auto& x : xs) miss += f(x) != (bottom ? x[i].back() : x[i].front());
    best = std::min(best, frac(miss, xs.size()));
  }
  return best;
}

inline std::vector<std::uint64_t> outcome_counts(const Rule& f, int n, int m) {
  std::vector<std::uint64_t> c(m, 0);
  for (const auto& x : all_profiles(n, m)) ++c[f(x)];
  return c;
}

/// Society's verdict on a over b under an IIA GSWF, from rankings.
inline bool society_prefers(const qgs::GswfIia& g, const RProfile& x, int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  const int p = qgs::pair_index(g.alternatives(), static_cast<qgs::Alt>(lo), static_cast<qgs::Alt>(hi));
  const bool lo_wins = g.table(p)[column_of(x, lo, hi)] != 0;
  return a == lo ? lo_wins : !lo_wins;
}

inline bool has_gcw(const qgs::GswfIia& g, const RProfile& x) {
  const int m = g.alternatives();
  for (int a = 0; a < m; ++a) {
    bool all = true;
    for (int b = 0; b < m && all; ++b)
      if (b != a) all = society_prefers(g, x, a, b);
    if (all) return true;
  }
  return false;
}

inline bool cyclic3(const qgs::GswfIia& g, const RProfile& x) {
  for (int a = 0; a < 3; ++a) {
    int wins = 0;
    for (int b = 0; b < 3; ++b)
      if (b != a) wins += society_prefers(g, x, a, b);
    if (wins != 1) return false;
  }
  return true;
}

/// Majority-rule cycles on three alternatives with n odd, straight from
/// vote counts.
inline std::uint64_t majority_cycles(int n) {
  std::uint64_t cycles = 0;
  for (const auto& x : all_profiles(n, 3)) {
    int wins[3] = {0, 0, 0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        if (a == b) continue;
        int votes = 0;
        for (const auto& r : x) votes += prefers(r, a, b);
        if (2 * votes > n) ++wins[a];
      }
    cycles += wins[0] == 1 && wins[1] == 1 && wins[2] == 1;
  }
  return cycles;
}

inline std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// GCW(g tensor on k alternatives) = k * Pr[0 is the GCW], g odd. For each
/// voter only the set S of alternatives ranked above 0 matters; it has
/// probability 1 / (k * C(k-1, |S|)).
inline Rational neutral_gcw(const qgs::BoolTable& g, int k) {
  const int n = qgs::bool_table_voters(g);
  const std::uint64_t sets = std::uint64_t{1} << (k - 1);
  std::vector<std::uint64_t> choice(n, 0);
  Rational p0 = 0;
  while (true) {
    Rational weight = 1;
    for (int v = 0; v < n; ++v)
      weight /= static_cast<int>(k * binomial(k - 1, std::popcount(choice[v])));
    bool wins = true;
    for (int j = 1; j < k && wins; ++j) {
      std::uint64_t z = 0;
      for (int v = 0; v < n; ++v)
        if (!((choice[v] >> (j - 1)) & 1U)) z |= std::uint64_t{1} << v;
      wins = g[z] != 0;
    }
    if (wins) p0 += weight;
    int v = 0;
    while (v < n && ++choice[v] == sets) choice[v++] = 0;
    if (v == n) break;
  }
  return p0 * k;
}

/// All members of TR_3 as output predicates, for brute-force minimisation.
inline std::vector<qgs::GswfIia> tr3_members(int n) {
  std::vector<qgs::GswfIia> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(qgs::TrMember{qgs::TrMember::Kind::Dictator, i, 0, {}}.gswf(n));
    out.push_back(qgs::TrMember{qgs::TrMember::Kind::AntiDictator, i, 0, {}}.gswf(n));
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  for (auto kind : {qgs::TrMember::Kind::TopFixed, qgs::TrMember::Kind::BottomFixed})
    for (int a = 0; a < 3; ++a)
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << size); ++code) {
        qgs::BoolTable h(size);
        for (std::uint64_t z = 0; z < size; ++z) h[z] = (code >> z) & 1U;
        out.push_back(qgs::TrMember{kind, 0, static_cast<qgs::Alt>(a), h}.gswf(n));
      }
  return out;
}

inline Rational tr3_distance(const qgs::GswfIia& g) {
  const int n = g.voters();
  const auto xs = all_profiles(n, 3);
  std::uint64_t best = xs.size();
  for (const auto& h : tr3_members(n)) {
    std::uint64_t miss = 0;
    for (const auto& x : xs) {
      bool differ = false;
      for (int a = 0; a < 3 && !differ; ++a)
        for (int b = a + 1; b < 3 && !differ; ++b)
          differ = society_prefers(g, x, a, b) != society_prefers(h, x, a, b);
      miss += differ;
      if (miss >= best) break;
    }
    best = std::min(best, miss);
  }
  return frac(best, xs.size());
}

}  // namespace oracle
