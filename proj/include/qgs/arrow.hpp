#pragma once

// IIA generalized social welfare functions: the SCF -> GSWF reduction and
// its converse, paradox probabilities, distance to the always-transitive
// family TR_3, neutral tensors g^{⊗C(m,2)} and the GCW identities relating
// m = 3, 4, 5, 6 alternatives.

#include "qgs/metric.hpp"
#include "qgs/prefcore.hpp"
#include "qgs/random.hpp"
#include "qgs/scf.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qgs {

/// Boolean function on {0,1}^n; entry z is g(z), bit v of z is voter v.
using BoolTable = std::vector<std::uint8_t>;

int bool_table_voters(const BoolTable& g);
bool is_odd(const BoolTable& g);
BoolTable dictator_table(int n, int voter);
/// Majority; for even n a tie follows voter 0, which keeps the table odd.
BoolTable majority_table(int n);
BoolTable parity_table(int n);
BoolTable random_table(int n, Rng& rng);
/// Uniform over odd functions: g chosen freely on inputs with bit n-1 clear.
BoolTable random_odd_table(int n, Rng& rng);

/// IIA GSWF: one table per lexicographic pair a < b; entry z is 1 when the
/// society ranks a above b and z's bit v says voter v ranks a above b.
class GswfIia {
 public:
  GswfIia() = default;
  GswfIia(int n, int m, std::vector<BoolTable> tables);

  int voters() const { return n_; }
  int alternatives() const { return m_; }
  const BoolTable& table(int pair) const { return tables_.at(pair); }
  const std::vector<BoolTable>& tables() const { return tables_; }

  /// Societal preference of a over b given the (a, b) column.
  bool prefers(Alt a, Alt b, std::uint64_t column) const;

  /// Output bits at a profile: bit p set iff the first alternative of pair p
  /// is ranked above the second.
  std::uint32_t outcome(std::span<const OrderIndex> orders) const;

  friend bool operator==(const GswfIia&, const GswfIia&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<BoolTable> tables_;
};

/// All pairwise tables equal to one odd g.
struct NeutralGswf {
  BoolTable g;
  int m = 3;

  GswfIia gswf() const;
};

GswfIia dictator_gswf(int n, int m, int voter);
GswfIia random_gswf(int n, int m, Rng& rng);

/// Throws DomainError when g is not odd.
NeutralGswf neutral_tensor(const BoolTable& g, int m);

/// Keeps the pairs inside `subset`; alternative k of the result is subset[k].
GswfIia restrict_gswf(const GswfIia& g, std::span<const Alt> subset);

/// Neutral iff all tables are equal and odd.
bool is_neutral(const GswfIia& g);

std::optional<Alt> gcw_of_outcome(std::uint32_t outcome, int m);
std::optional<Alt> gcl_of_outcome(std::uint32_t outcome, int m);
std::optional<Alt> gcw_winner_at(const GswfIia& g, std::span<const OrderIndex> orders);
std::optional<Alt> gcw_winner_at(const GswfIia& g, const Profile& x);
/// m = 3: whether the three pairwise outputs form a cycle.
bool is_cyclic3(std::uint32_t outcome);

/// G^{a,b}(z) = [p_a(z) > p_b(z)], ties broken by tie_voter's bit in z.
GswfIia gswf_from_scf(const Scf& f, int tie_voter = 0, int workers = 1);

/// F(x) = GCW of G at x when it exists, else the fallback voter's top.
Scf scf_from_gswf(const GswfIia& g, int fallback_voter = 0);

/// Pr[G(x) is cyclic], m = 3.
MetricReport nt(const GswfIia& g, const Options& opts = {});
/// Pr[no GCW at x], any m.
MetricReport ngcw(const GswfIia& g, const Options& opts = {});
MetricReport gcw(const GswfIia& g, const Options& opts = {});

/// Member of TR_3.
struct TrMember {
  enum class Kind { Dictator, AntiDictator, TopFixed, BottomFixed };
  Kind kind = Kind::Dictator;
  int voter = 0;        // dictator / anti-dictator
  Alt alternative = 0;  // fixed top / bottom alternative
  BoolTable h;          // free pair (u < w): 1 means u above w

  std::string describe() const;
  GswfIia gswf(int n) const;
};

struct Tr3Distance {
  MetricReport triple;   // Pr[full output differs]
  MetricReport per_bit;  // Pr over profile and pair of a differing bit
  TrMember witness;
};

/// Distance to TR_3 over dictators, anti-dictators and fixed top/bottom
/// members with the pointwise-optimal free-pair table.
Tr3Distance dist_tr3(const GswfIia& g, const Options& opts = {});

/// Output-triple disagreement count between two GSWFs over all profiles.
std::uint64_t disagreement_count(const GswfIia& g, const GswfIia& h);

struct Dict2Distance {
  Rational fraction;
  int voter = 0;
  bool anti = false;
};

Dict2Distance dist_dict2(const BoolTable& g);

struct CompositionReport {
  bool exact = true;
  MetricReport joint;   // Pr[no GCW in first block and none in second]
  MetricReport first;   // Pr[no GCW among the first m1]
  MetricReport second;  // Pr[no GCW among the rest]
  double z_score = 0.0;  // sampled mode
  bool holds = false;
};

/// Independence of the no-GCW events on alternatives [0, m1) and [m1, m).
CompositionReport check_composition(const GswfIia& g, int m1, const Options& opts = {});

struct IdentityReport {
  MetricReport gcw3, gcw4, gcw5, gcw6;
  bool four_exact = false;
  bool four_holds = false;  // GCW(G4) = 2 GCW(G3) - 1
  double four_z = 0.0;
  bool five_exact = false;
  bool five_holds = false;  // GCW(G5) = GCW(G6)/3 + 5 GCW(G3)/3 - 1
  double five_z = 0.0;
  CompositionReport composition;  // blocks {0,1,2} and {3,4,5} of G6
  bool holds() const { return four_holds && five_holds && composition.holds; }
};

/// Throws DomainError when g is not odd. Sampled comparisons pass within
/// three standard errors.
IdentityReport check_identities(const BoolTable& g, const Options& opts = {});

struct ChainReport {
  std::vector<Rational> mab;  // unordered pairs (0,1), (0,2), (1,2)
  std::vector<Rational> nab;
  Rational eps1;
  Rational eps2;
  Rational dist_dict;
  Rational dist_antidict;
  Rational range_min;
  Rational nt;
  Rational ngcw;
  Rational dist_tr3;
  Rational nab_sum;
  bool nt_le_nab_sum = false;
  bool nab_le_sqrt_mab = false;   // per pair N <= sqrt(M)
  bool sqrt_mab_le_bound = false; // per pair M <= eps1
  bool nab_sum_le_bound = false;  // sum N <= 3 sqrt(eps1)
  bool nt_le_bound = false;       // NT <= 3 sqrt(eps1)
  bool dist_ge_bound = false;     // Dist(G, TR_3) >= eps2 - 3 sqrt(eps1)
  bool holds() const {
    return nt_le_nab_sum && nab_le_sqrt_mab && sqrt_mab_le_bound && nab_sum_le_bound &&
           nt_le_bound && dist_ge_bound;
  }
};

/// Exact; m = 3 and the profile space within the budget.
ChainReport check_reduction_chain(const Scf& f, int tie_voter = 0, const Options& opts = {});

struct ConverseReport {
  Rational ngcw;
  Rational max_mab;
  bool holds = false;  // every M^{a,b}(F) <= 2 NGCW(G)
};

ConverseReport check_converse(const GswfIia& g, int fallback_voter = 0, const Options& opts = {});

}  // namespace qgs
