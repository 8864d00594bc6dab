#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "eqdist/counting.hpp"
#include "eqdist/distribution.hpp"
#include "eqdist/errors.hpp"

using namespace eqdist;

namespace {

using Sets = std::vector<std::vector<std::uint64_t>>;

Sets sorted(Sets s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("congruence solution formula") {
  CHECK(congruence_solution_formula({3, {1}, 1, 1}) == 2);
  CHECK(congruence_solution_formula({3, {1, 2}, 2, 1}) == 6);
  CHECK(congruence_solution_formula({7, {1}, 1, 1}) == 2);
  CHECK(congruence_solution_formula({7, {3}, 1, 1}) == 2);
  CHECK(congruence_solution_formula({5, {2}, 1, 1}) == 2);
  CHECK_THROWS_AS(congruence_solution_formula({3, {1}, 2, 1}), DomainError);  // n > t
  CHECK_THROWS_AS(congruence_solution_formula({3, {1}, 1, 0}), DomainError);  // k < 1
  CHECK_THROWS_AS(congruence_solution_formula({9, {3}, 1, 1}), DomainError);  // non-unit
  CHECK_THROWS_AS(congruence_solution_formula({3, {1, 1}, 1, 1}), DomainError);
}

TEST_CASE("congruence solutions by brute force") {
  CHECK(congruence_solution_bruteforce({3, {1}, 1, 1}) == 2);      // x in {0,3}
  CHECK(congruence_solution_bruteforce({3, {1, 2}, 2, 1}) == 6);
  CHECK(congruence_solution_bruteforce({5, {2}, 1, 1}) == 2);      // x in {0,5}
  CHECK_THROWS_AS(congruence_solution_bruteforce({7, {1, 2, 3}, 3, 2}, 10), ResourceError);
}

TEST_CASE("formula equals brute force across a grid") {
  for (std::uint64_t q : {3, 5, 7}) {
    const RingContext ctx = build_context(q);
    const std::uint64_t limit = std::min<std::uint64_t>(3, ctx.units.size());
    // pools of consecutive least units keep this exhaustive-but-quick
    for (std::uint64_t t = 1; t <= limit; ++t) {
      std::vector<std::uint64_t> pool(ctx.units.begin(), ctx.units.begin() + t);
      for (std::uint64_t n = 0; n <= t; ++n)
        for (std::uint64_t k = 1; k <= 2; ++k) {
          const CongruenceFamily fam{q, pool, n, k};
          REQUIRE(congruence_solution_formula(fam) == congruence_solution_bruteforce(fam));
        }
    }
  }
}

TEST_CASE("closed-form count of equidistributed configurations") {
  CHECK(equidistributed_count_formula(build_context(7)) == 3);
  CHECK(equidistributed_count_formula(build_context(5)) == 4);
  CHECK(equidistributed_count_formula(build_context(23)) == 91);
  CHECK(equidistributed_count_formula(build_context(9)) == 8);
  CHECK(equidistributed_count_formula(build_context(11)) == 32);
  CHECK(equidistributed_count_formula(build_context(13)) == 64);
  CHECK(equidistributed_count_formula(build_context(17)) == 288);
  CHECK_THROWS_AS(equidistributed_count_formula(build_context(15)), DomainError);
  CHECK_THROWS_AS(equidistributed_count_formula(build_context(8)), DomainError);
}

TEST_CASE("construction enumeration, odd r") {
  const auto e7 = enumerate_by_construction(build_context(7));
  CHECK(e7.configurations == 3);
  CHECK(sorted(e7.distinct_sets) ==
        Sets{{1, 2, 3, 4, 5, 6}, {1, 2, 4}, {3, 5, 6}});

  const auto e23 = enumerate_by_construction(build_context(23));
  CHECK(e23.configurations == 91);
  CHECK(e23.distinct_sets.size() == 91);

  // q=31 has three odd-r leaders, exercising pair/single mixes across leaders
  const RingContext c31 = build_context(31);
  CHECK(equidistributed_count_formula(c31) == 1293);
  const auto e31 = enumerate_by_construction(c31);
  CHECK(e31.configurations == 1293);
  CHECK(e31.distinct_sets.size() == 1293);
}

TEST_CASE("construction enumeration, even r") {
  const auto e5 = enumerate_by_construction(build_context(5));
  CHECK(e5.configurations == 4);
  CHECK(e5.distinct_sets == Sets{{1, 2, 3, 4}});

  const auto e9 = enumerate_by_construction(build_context(9));
  CHECK(e9.configurations == 8);
  CHECK(e9.distinct_sets == Sets{{1, 2, 4, 5, 7, 8}});

  const auto e17 = enumerate_by_construction(build_context(17));
  CHECK(e17.configurations == 288);
  CHECK(e17.distinct_sets.size() == 3);
}

TEST_CASE("construction enumeration budget") {
  CHECK_THROWS_AS(enumerate_by_construction(build_context(7), 5), ResourceError);
  CHECK_THROWS_AS(enumerate_by_construction(build_context(17), 100), ResourceError);
}

TEST_CASE("census finds the expected sets") {
  const auto c7 = brute_force_census(build_context(7));
  CHECK(c7.sets == Sets{{1, 2, 4}, {3, 5, 6}, {1, 2, 3, 4, 5, 6}});  // ascending mask order

  CHECK(brute_force_census(build_context(5)).sets == Sets{{1, 2, 3, 4}});
  CHECK(brute_force_census(build_context(9)).sets == Sets{{1, 2, 4, 5, 7, 8}});

  CHECK_THROWS_AS(brute_force_census(build_context(23)), ResourceError);
}

TEST_CASE("census beyond the constructed family at q=17") {
  // Ground truth (cross-checked by an independent exhaustive enumeration):
  // the two orbit sets and the full group, plus 16 sets that pair length-r/2
  // half-chains from the two orbits. 2^(r/2) = -1 closes a ±2 chain early,
  // so these are equidistributed without admitting a length-r block cover.
  const RingContext ctx = build_context(17);
  const auto census = brute_force_census(ctx);
  CHECK(census.sets.size() == 19);
  const Sets all = sorted(census.sets);
  auto contains = [&](const std::vector<std::uint64_t>& s) {
    return std::binary_search(all.begin(), all.end(), s);
  };
  CHECK(contains({1, 2, 4, 8, 9, 13, 15, 16}));                          // orbit of 1
  CHECK(contains({3, 5, 6, 7, 10, 11, 12, 14}));                         // orbit of 3
  CHECK(contains({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}));
  CHECK(contains({1, 2, 3, 4, 8, 10, 11, 12}));  // {1,2,4,8} u {3,10,11,12}
  for (const auto& s : census.sets)
    REQUIRE(is_equidistributed(subset_sum_distribution(ResidueMultiset::from_elements(17, s))));

  // each of the 16 hybrids takes exactly half of each orbit
  const auto orb1 = pm2_orbit(1, ctx);
  const std::vector<std::uint64_t> full(ctx.units);
  std::uint64_t hybrids = 0;
  for (const auto& s : census.sets) {
    if (s == full || s == pm2_orbit(1, ctx) || s == pm2_orbit(3, ctx)) continue;
    ++hybrids;
    REQUIRE(s.size() == 8);
    std::uint64_t in_first_orbit = 0;
    for (std::uint64_t e : s)
      if (std::binary_search(orb1.begin(), orb1.end(), e)) ++in_first_orbit;
    REQUIRE(in_first_orbit == 4);
  }
  CHECK(hybrids == 16);
}

TEST_CASE("census pruning does not change results") {
  for (std::uint64_t q : {7, 9, 10}) {
    const RingContext ctx = build_context(q);
    CHECK(brute_force_census(ctx, kDefaultBudget, 1, true).sets ==
          brute_force_census(ctx, kDefaultBudget, 1, false).sets);
  }
}

TEST_CASE("results are identical at any parallelism degree") {
  const RingContext c13 = build_context(13);
  CHECK(brute_force_census(c13, kDefaultBudget, 1).sets ==
        brute_force_census(c13, kDefaultBudget, 8).sets);
  const auto a = enumerate_by_construction(build_context(23), kDefaultBudget, 1);
  const auto b = enumerate_by_construction(build_context(23), kDefaultBudget, 4);
  CHECK(a.configurations == b.configurations);
  CHECK(a.distinct_sets == b.distinct_sets);
}

TEST_CASE("reconcile_counts") {
  {
    const CountReport rep = reconcile_counts(build_context(7));
    CHECK(rep.formula_value == 3);
    CHECK(rep.configuration_count == 3);
    CHECK(rep.distinct_set_count == 3);
    REQUIRE(rep.brute_force_count.has_value());
    CHECK(*rep.brute_force_count == 3);
    CHECK(rep.flags.formula_vs_config);
    CHECK(rep.flags.formula_vs_sets);
    CHECK(rep.flags.sets_vs_bruteforce == std::optional<bool>(true));
  }
  {
    const CountReport rep = reconcile_counts(build_context(5));
    CHECK(rep.formula_value == 4);
    CHECK(rep.configuration_count == 4);
    CHECK(rep.distinct_set_count == 1);
    CHECK(*rep.brute_force_count == 1);
    CHECK(rep.flags.formula_vs_config);
    CHECK_FALSE(rep.flags.formula_vs_sets);
    CHECK(rep.flags.sets_vs_bruteforce == std::optional<bool>(true));
  }
  {
    const CountReport rep = reconcile_counts(build_context(23));
    CHECK(rep.formula_value == 91);
    CHECK(rep.configuration_count == 91);
    CHECK(rep.distinct_set_count == 91);
    CHECK_FALSE(rep.brute_force_count.has_value());
    CHECK(rep.brute_force_note == "skipped: budget");
    CHECK_FALSE(rep.flags.sets_vs_bruteforce.has_value());
  }
  CHECK_THROWS_AS(reconcile_counts(build_context(15)), DomainError);
}

TEST_CASE("every construction set is uniform and decomposes") {
  for (std::uint64_t q : {5, 7, 9, 17, 23}) {
    const RingContext ctx = build_context(q);
    for (const auto& s : enumerate_by_construction(ctx).distinct_sets) {
      const ResidueMultiset a = ResidueMultiset::from_elements(q, s);
      REQUIRE(is_equidistributed(subset_sum_distribution(a)));
      REQUIRE(decompose(a, ctx).ok());
    }
  }
}
