#include "doctest.h"
#include "oracles.hpp"

#include "qgs/scf.hpp"

using namespace qgs;

namespace {

Profile prof(std::vector<std::vector<Alt>> rs) {
  std::vector<LinearOrder> os;
  for (auto& r : rs) os.emplace_back(std::move(r));
  return Profile(std::move(os));
}

Options exact() {
  Options o;
  o.mode = Mode::Exact;
  return o;
}

}  // namespace

TEST_CASE("zoo rules at hand-picked profiles") {
  // a = 0, b = 1, c = 2.
  const auto d0 = zoo_make("dictatorship", 2, 3, {.voter = 0});
  CHECK(d0(prof({{1, 0, 2}, {0, 1, 2}})) == 1);
  const auto ad1 = zoo_make("anti_dictatorship", 2, 3, {.voter = 1});
  CHECK(ad1(prof({{0, 1, 2}, {1, 0, 2}})) == 2);
  const auto pl = zoo_make("plurality", 3, 3);
  CHECK(pl(prof({{0, 1, 2}, {1, 2, 0}, {0, 2, 1}})) == 0);
  CHECK(zoo_make_spec("constant(2)", 2, 3)(prof({{0, 1, 2}, {1, 0, 2}})) == 2);
  CHECK(zoo_make_spec("dictatorship:1", 2, 3)(prof({{0, 1, 2}, {2, 0, 1}})) == 2);
}

TEST_CASE("zoo errors") {
  CHECK_THROWS_AS(zoo_make("nope", 2, 3), DomainError);
  CHECK_THROWS_AS(zoo_make("dictatorship", 2, 3, {.voter = 2}), DomainError);
  CHECK_THROWS_AS(zoo_make("constant", 2, 3, {.alternative = 3}), DomainError);
  CHECK_THROWS_AS(zoo_make_spec("dictatorship:x", 2, 3), DomainError);
}

TEST_CASE("plurality and borda agree with the ranking oracles") {
  for (int n = 1; n <= 3; ++n) {
    const auto pl = oracle::wrap(zoo_make("plurality", n, 3));
    const auto bo = oracle::wrap(zoo_make("borda", n, 3));
    for (const auto& x : oracle::all_profiles(n, 3)) {
      CHECK(pl(x) == oracle::plurality(x, 3));
      CHECK(bo(x) == oracle::borda(x, 3));
    }
  }
}

TEST_CASE("distance to the dictator and anti-dictator families") {
  const auto d0 = zoo_make("dictatorship", 3, 3, {.voter = 0});
  auto r = dist_to_dictatorship(d0, exact());
  CHECK(r.value.value == 0);
  CHECK(r.argmin == 0);
  CHECK(dist_to_antidictatorship(zoo_make("anti_dictatorship", 3, 3), exact()).value.value == 0);
  CHECK(dist_to_antidictatorship(zoo_make("dictatorship", 1, 3), exact()).value.value == 1);
  CHECK(dist_to_dictatorship(zoo_make("constant", 2, 3), exact()).value.value == Rational(2, 3));
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < n; ++i) {
      const auto d = dist_to_dictatorship(zoo_make("dictatorship", n, 3, {.voter = i}), exact());
      CHECK(d.value.value == 0);
      CHECK(d.argmin == i);
    }
  for (const char* rule : {"plurality", "borda", "pairwise_majority_fallback"}) {
    const auto f = zoo_make(rule, 3, 3);
    const auto rule_f = oracle::wrap(f);
    CHECK(dist_to_dictatorship(f, exact()).value.value == oracle::dist_to_family(rule_f, 3, 3, false));
    CHECK(dist_to_antidictatorship(f, exact()).value.value ==
          oracle::dist_to_family(rule_f, 3, 3, true));
  }
}

TEST_CASE("range minimum probability") {
  const auto c = range_min_prob(zoo_make("constant", 2, 3, {.alternative = 0}), exact());
  CHECK(c.value.value == 0);
  CHECK(c.argmin == 1);
  CHECK(range_min_prob(zoo_make("dictatorship", 2, 3), exact()).value.value == Rational(1, 3));
  const auto pl = zoo_make("plurality", 3, 3);
  const auto counts = oracle::outcome_counts(oracle::wrap(pl), 3, 3);
  const auto lowest = *std::min_element(counts.begin(), counts.end());
  const auto r = range_min_prob(pl, exact());
  CHECK(r.value.value == oracle::frac(lowest, 216));
  CHECK(counts[r.argmin] == lowest);
  // Smallest-index tie-breaking hands every three-way tie to alternative 0.
  CHECK(counts[0] == 104);
  CHECK(counts[1] == 56);
  CHECK(counts[2] == 56);
}

TEST_CASE("neutrality") {
  const auto pl = zoo_make("plurality", 3, 3);
  const auto s = is_neutral(pl, exact());
  CHECK_FALSE(s.holds);
  CHECK(s.exhaustive);
  // The witness is a genuinely non-neutral profile: a three-way tie.
  const auto x = profile_from_index(s.witness_profile, 3, 3);
  CHECK(x.voter(0).top() != x.voter(1).top());
  CHECK(x.voter(1).top() != x.voter(2).top());
  CHECK(x.voter(0).top() != x.voter(2).top());
  CHECK(is_neutral(zoo_make("dictatorship", 3, 3), exact()).holds);
  CHECK(is_neutral(zoo_make("anti_dictatorship", 2, 3, {.voter = 1}), exact()).holds);
  CHECK_FALSE(is_neutral(zoo_make("constant", 2, 3), exact()).holds);
}

TEST_CASE("anonymity") {
  CHECK(is_anonymous(zoo_make("plurality", 3, 3), exact()).holds);
  CHECK(is_anonymous(zoo_make("borda", 3, 3), exact()).holds);
  CHECK_FALSE(is_anonymous(zoo_make("dictatorship", 2, 3), exact()).holds);
  const auto rt = zoo_make("random_table", 2, 3, {.seed = 1});
  const auto rule_f = oracle::wrap(rt);
  bool swap_invariant = true;
  for (const auto& x : oracle::all_profiles(2, 3)) swap_invariant &= rule_f(x) == rule_f({x[1], x[0]});
  CHECK(is_anonymous(rt, exact()).holds == swap_invariant);
  CHECK_FALSE(swap_invariant);
}

TEST_CASE("sampled symmetry checks report their coverage") {
  Options o;
  o.mode = Mode::Sampled;
  o.samples = 2000;
  o.seed = 3;
  const auto s = is_anonymous(zoo_make("plurality", 8, 3), o);
  CHECK(s.holds);
  CHECK_FALSE(s.exhaustive);
  CHECK(s.checks > 0);
  CHECK_FALSE(is_neutral(zoo_make("constant", 8, 3), o).holds);
}

TEST_CASE("materialize agrees pointwise") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& f : zoo_catalogue(n)) {
      const auto t = materialize(f, 2);
      REQUIRE(t.has_table());
      REQUIRE(t.outputs().size() == profile_count(n, 3));
      for (std::uint64_t k = 0; k < profile_count(n, 3); ++k) {
        const Profile x = profile_from_index(k, n, 3);
        CHECK(t.outputs()[k] == f(x));
      }
    }
  CHECK_THROWS_AS(materialize(zoo_make("plurality", 12, 3)), BudgetError);
}

TEST_CASE("random tables are reproducible") {
  const auto a = zoo_make("random_table", 3, 3, {.seed = 9});
  const auto b = zoo_make("random_table", 3, 3, {.seed = 9});
  const auto c = zoo_make("random_table", 3, 3, {.seed = 10});
  REQUIRE(a.has_table());
  CHECK(std::equal(a.outputs().begin(), a.outputs().end(), b.outputs().begin()));
  CHECK_FALSE(std::equal(a.outputs().begin(), a.outputs().end(), c.outputs().begin()));
  for (Alt v : a.outputs()) CHECK(v < 3);
}

TEST_CASE("anonymous rules have voter-independent dictator distance") {
  for (const char* rule : {"plurality", "borda"}) {
    const auto f = zoo_make(rule, 3, 3);
    const auto rule_f = oracle::wrap(f);
    const auto xs = oracle::all_profiles(3, 3);
    std::vector<std::uint64_t> miss(3, 0);
    for (const auto& x : xs)
      for (int i = 0; i < 3; ++i) miss[i] += rule_f(x) != x[i][0];
    CHECK(miss[0] == miss[1]);
    CHECK(miss[1] == miss[2]);
  }
}

TEST_CASE("general m: four alternatives") {
  const auto pl = zoo_make("plurality", 2, 4);
  const auto rule_f = oracle::wrap(pl);
  for (const auto& x : oracle::all_profiles(2, 4)) CHECK(rule_f(x) == oracle::plurality(x, 4));
  CHECK(dist_to_dictatorship(pl, exact()).value.value == oracle::dist_to_family(rule_f, 2, 4, false));
}
