#pragma once

// Social choice functions: explicit output tables, built-in rules, and the
// distance/structure diagnostics (distance to dictatorship, range, symmetry).

#include "qgs/metric.hpp"
#include "qgs/prefcore.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgs {

enum class RuleKind {
  Dictatorship,
  AntiDictatorship,
  Constant,
  Plurality,
  Borda,
  PairwiseMajorityFallback,
  RandomTable,
  Table,
  Custom,
};

struct RuleParams {
  int voter = 0;
  Alt alternative = 0;
  std::uint64_t seed = 0;
};

using ScfEvaluator = std::function<Alt(std::span<const OrderIndex>)>;

/// An SCF on n voters and m alternatives. Cheap to copy; immutable.
class Scf {
 public:
  /// Table-backed SCF; outputs are indexed by profile index.
  static Scf from_table(int n, int m, std::vector<Alt> outputs, std::string name = "table");
  static Scf custom(int n, int m, std::string name, ScfEvaluator eval);

  int voters() const;
  int alternatives() const;
  RuleKind kind() const;
  const std::string& name() const;

  Alt operator()(std::span<const OrderIndex> orders) const;
  Alt operator()(const Profile& p) const;

  bool has_table() const;
  /// Outputs in profile-index order; empty unless has_table().
  std::span<const Alt> outputs() const;

 private:
  struct Impl;
  explicit Scf(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend Scf zoo_make(std::string_view name, int n, int m, const RuleParams& params);
};

/// Built-in rules: dictatorship, anti_dictatorship, constant, plurality,
/// borda, pairwise_majority_fallback, random_table.
Scf zoo_make(std::string_view name, int n, int m, const RuleParams& params = {});

/// Parses "name", "name:param" or "name(param)", e.g. "dictatorship:1",
/// "constant(2)", "random_table:42".
Scf zoo_make_spec(std::string_view spec, int n, int m);

const std::vector<std::string>& zoo_rule_names();

/// The deterministic part of the zoo for given n, m=3: every dictatorship,
/// anti-dictatorship, constant, plus plurality, borda and the pairwise
/// majority rule.
std::vector<Scf> zoo_catalogue(int n, int m = 3);

/// Explicit output table of any SCF. Throws BudgetError when (m!)^n
/// exceeds the budget.
Scf materialize(const Scf& f, int workers = 1, std::uint64_t budget = kDefaultExactBudget);

/// Table-backed copy when the exact path may run and the profile space fits
/// the budget, otherwise f.
Scf materialize_if_small(const Scf& f, const Options& opts);

struct ArgminFraction {
  MetricReport value;
  int argmin = 0;
};

ArgminFraction dist_to_dictatorship(const Scf& f, const Options& opts = {});
ArgminFraction dist_to_antidictatorship(const Scf& f, const Options& opts = {});
ArgminFraction range_min_prob(const Scf& f, const Options& opts = {});

struct SymmetryCheck {
  bool holds = true;
  bool exhaustive = true;
  std::uint64_t checks = 0;
  std::uint64_t witness_profile = 0;  // first violating profile index when exhaustive
};

/// F(πx) = π(F(x)) for every relabeling π of the alternatives.
SymmetryCheck is_neutral(const Scf& f, const Options& opts = {});
/// F invariant under every permutation of the voters.
SymmetryCheck is_anonymous(const Scf& f, const Options& opts = {});

}  // namespace qgs
