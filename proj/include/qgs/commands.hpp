#pragma once

// Report builders behind the CLI subcommands.

#include "qgs/arrow.hpp"
#include "qgs/report.hpp"
#include "qgs/scf.hpp"

#include <string>
#include <string_view>

namespace qgs {

/// A zoo spec, or a path to an SCF3 file when one exists at `source`.
/// n and m are checked against a loaded file when positive.
Scf open_scf(const std::string& source, int n, int m);

/// GSWF specs: majority, parity, dictator:i, anti_dictator:i, random:seed
/// (independent random tables), random_odd:seed (neutral tensor of a random
/// odd g), or any SCF spec prefixed with "reduce:" (e.g. reduce:plurality).
GswfIia gswf_make_spec(std::string_view spec, int n, int m);
GswfIia open_gswf(const std::string& source, int n, int m);

/// M_i, their sum, M^{a,b} and N^{a,b} (m = 3), distances to the dictator
/// and anti-dictator families, the range minimum and symmetry flags.
Report metrics_report(const Scf& f, const Options& opts);

/// NT (m = 3), NGCW, GCW, distance to TR_3 (m = 3), dist_dict2 per table,
/// neutrality.
Report gswf_report(const GswfIia& g, const Options& opts);

struct ReduceResult {
  GswfIia g;
  Report report;
  bool chain_checked = false;
  bool chain_holds = false;
};

/// Builds G from F (m = 3) and reports on it; the exact chain check runs
/// when the profile space is within the budget.
ReduceResult reduce_report(const Scf& f, int tie_voter, const Options& opts);

}  // namespace qgs
