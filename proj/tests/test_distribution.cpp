#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqdist/distribution.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/rng.hpp"
#include "eqdist/verify.hpp"

using namespace eqdist;

namespace {

std::vector<BigInt> big(std::initializer_list<int> xs) {
  return std::vector<BigInt>(xs.begin(), xs.end());
}

ResidueMultiset units_of(std::uint64_t n) {
  const RingContext ctx = build_context(n);
  ResidueMultiset a(n);
  for (std::uint64_t u : ctx.units) a.add(u);
  return a;
}

}  // namespace

TEST_CASE("subset sum distribution matches frozen examples") {
  CHECK(subset_sum_distribution(ResidueMultiset(7, {1, 2, 4})).counts ==
        big({1, 1, 1, 1, 1, 1, 1}));
  CHECK(subset_sum_distribution(ResidueMultiset(5, {})).counts == big({0, 0, 0, 0, 0}));
  CHECK(subset_sum_distribution(ResidueMultiset(7, {1, 5, 3})).counts ==
        big({0, 2, 1, 1, 1, 1, 1}));
}

TEST_CASE("multiplicity means positional distinguishability") {
  // {1,1} mod 3: subsets {}, {a}, {b}, {a,b} -> non-empty sums 1,1,2
  ResidueMultiset a(3);
  a.add(1, 2);
  CHECK(subset_sum_distribution(a).counts == big({0, 2, 1}));
}

TEST_CASE("is_equidistributed") {
  CHECK(is_equidistributed(subset_sum_distribution(ResidueMultiset(7, {1, 2, 4}))));
  CHECK_FALSE(is_equidistributed(subset_sum_distribution(ResidueMultiset(7, {1, 5, 3}))));
  CHECK(is_equidistributed(subset_sum_distribution(ResidueMultiset(5, {}))));
  CHECK_THROWS_AS(
      is_equidistributed(subset_sum_distribution(ResidueMultiset(5, {})).including_empty()),
      DomainError);
}

TEST_CASE("including_empty adds the empty sum at 0") {
  const DistributionProfile p = subset_sum_distribution(ResidueMultiset(7, {1, 2, 4}));
  const DistributionProfile q = p.including_empty();
  CHECK(q.counts[0] == p.counts[0] + 1);
  CHECK(q.includes_empty);
  CHECK(p.total() + 1 == q.total());
  CHECK(q.total() == pow2(3));
}

TEST_CASE("uniform_count") {
  CHECK(uniform_count(3, 7) == 1);
  CHECK(uniform_count(6, 9) == 7);
  CHECK(uniform_count(48, 105) == BigInt("2680714063911"));
  CHECK_THROWS_AS(uniform_count(4, 7), DomainError);
}

TEST_CASE("necessary_conditions") {
  CHECK(necessary_conditions(ResidueMultiset(7, {1, 2, 4})) == NecessaryConditions{true, true});
  CHECK(necessary_conditions(ResidueMultiset(7, {1, 5, 3})) == NecessaryConditions{true, false});
  CHECK_FALSE(necessary_conditions(ResidueMultiset(4, {1})).pow2_ok);  // k=1, even n
  CHECK_FALSE(necessary_conditions(ResidueMultiset(9, {1})).pow2_ok);
}

TEST_CASE("poly identity") {
  const PolyIdentityResult a = poly_identity_check(ResidueMultiset(7, {1, 2, 4}));
  CHECK(a.holds);
  CHECK(a.remainder.coeffs == big({1, 0, 0, 0, 0, 0}));

  const PolyIdentityResult b = poly_identity_check(ResidueMultiset(3, {1}));
  CHECK_FALSE(b.holds);
  CHECK(b.remainder.coeffs == big({1, 1}));  // 1 + x

  const PolyIdentityResult c = poly_identity_check(ResidueMultiset(3, {1, 2}));
  CHECK(c.holds);
  CHECK(c.remainder.coeffs == big({1, 0}));
}

TEST_CASE("coset chain partition") {
  CHECK(coset_chain_partition(build_context(7)) ==
        std::vector<std::vector<std::uint64_t>>{{1, 2, 4}, {3, 6, 5}});
  CHECK(coset_chain_partition(build_context(9)) ==
        std::vector<std::vector<std::uint64_t>>{{1, 2, 4, 8, 7, 5}});
  CHECK(coset_chain_partition(build_context(15)) ==
        std::vector<std::vector<std::uint64_t>>{{1, 2, 4, 8}, {7, 14, 13, 11}});
  CHECK_THROWS_AS(coset_chain_partition(build_context(4)), DomainError);
}

TEST_CASE("full unit multisets are uniform (small moduli)") {
  for (std::uint64_t n : {3, 5, 7, 9, 11, 13, 15, 17, 21, 23}) {
    const ResidueMultiset a = units_of(n);
    const DistributionProfile p = subset_sum_distribution(a);
    REQUIRE(is_equidistributed(p));
    REQUIRE(p.counts[0] == uniform_count(a.cardinality(), n));
  }
}

TEST_CASE("distribution equals direct enumeration, exhaustive k<=4 n<=15") {
  for (std::uint64_t n = 2; n <= 15; ++n) {
    std::vector<std::uint64_t> elems;
    auto rec = [&](auto&& self, std::uint64_t least, std::uint64_t remaining) -> void {
      const ResidueMultiset a = ResidueMultiset::from_elements(n, elems);
      const DistributionProfile dp = subset_sum_distribution(a);
      REQUIRE(dp == enumeration_profile(a));
      if (n >= 3) REQUIRE(poly_identity_check(a).holds == is_equidistributed(dp));
      if (remaining == 0) return;
      for (std::uint64_t e = least; e < n; ++e) {
        elems.push_back(e);
        self(self, e, remaining - 1);
        elems.pop_back();
      }
    };
    rec(rec, 0, 4);
  }
}

TEST_CASE("distribution equals direct enumeration, random k<=16") {
  Rng rng(20240811);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 2 + rng.below(14);
    const std::uint64_t k = rng.below(17);
    ResidueMultiset a(n);
    for (std::uint64_t j = 0; j < k; ++j) a.add(rng.below(n));
    const DistributionProfile dp = subset_sum_distribution(a);
    REQUIRE(dp == enumeration_profile(a));
    if (n >= 3) REQUIRE(poly_identity_check(a).holds == is_equidistributed(dp));
  }
}

TEST_CASE("no equidistributed subset exists for even moduli") {
  for (std::uint64_t n : {4, 6, 8, 10}) {
    const RingContext ctx = build_context(n);
    const std::uint64_t phi = ctx.phi;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << phi); ++mask) {
      ResidueMultiset a(n);
      for (std::uint64_t b = 0; b < phi; ++b)
        if (mask >> b & 1) a.add(ctx.units[b]);
      REQUIRE_FALSE(is_equidistributed(subset_sum_distribution(a)));
    }
  }
}

TEST_CASE("multiset literal edge: residues reduce and merge") {
  ResidueMultiset a(7);
  a.add(9);   // 2
  a.add(2);   // merges
  a.add(16);  // 2 again
  CHECK(a.entries() == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{2, 3}});
  CHECK(a.cardinality() == 3);
  CHECK_THROWS_AS(a.add(1, 0), DomainError);
  CHECK_THROWS_AS(ResidueMultiset(1), DomainError);
}
