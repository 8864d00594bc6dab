#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "eqdist/blocks.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/rng.hpp"

using namespace eqdist;

namespace {

std::vector<int> signs_of(const char* s) {
  std::vector<int> out;
  for (const char* p = s; *p; ++p) out.push_back(*p == '+' ? 1 : -1);
  return out;
}

std::vector<GeometricBlock> random_block_list(Rng& rng, const RingContext& ctx) {
  const std::uint64_t r = ctx.r();
  const std::uint64_t count = 1 + rng.below(3);
  std::vector<GeometricBlock> blocks;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t leader = ctx.units[rng.below(ctx.units.size())];
    std::vector<int> signs(r, 1);
    if (r % 2 == 1)
      for (auto& s : signs) s = rng.flip() ? 1 : -1;
    else
      for (std::uint64_t j = 0; j < r / 2; ++j) signs[j] = signs[j + r / 2] = rng.flip() ? 1 : -1;
    blocks.push_back(build_block(leader, signs, ctx));
  }
  return blocks;
}

}  // namespace

TEST_CASE("pm2 orbits") {
  const RingContext c7 = build_context(7);
  CHECK(pm2_orbit(1, c7) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
  CHECK(pm2_orbit(3, c7) == pm2_orbit(1, c7));  // same orbit, set equality

  const RingContext c5 = build_context(5);
  CHECK(pm2_orbit(1, c5) == std::vector<std::uint64_t>{1, 2, 3, 4});  // r even: size r

  CHECK_THROWS_AS(pm2_orbit(3, build_context(9)), DomainError);  // non-unit
}

TEST_CASE("canonical leaders") {
  const LeaderBasis b7 = canonical_leaders(build_context(7));
  CHECK(b7.parity == ParityCase::odd_r);
  CHECK(b7.leaders == std::vector<std::uint64_t>{1});
  CHECK(b7.t() == 1);

  const LeaderBasis b17 = canonical_leaders(build_context(17));
  CHECK(b17.parity == ParityCase::even_r);
  CHECK(b17.leaders == std::vector<std::uint64_t>{1, 3});

  const LeaderBasis b23 = canonical_leaders(build_context(23));
  CHECK(b23.parity == ParityCase::odd_r);
  CHECK(b23.leaders == std::vector<std::uint64_t>{1});

  CHECK_THROWS_AS(canonical_leaders(build_context(8)), DomainError);
}

TEST_CASE("leader spans partition the units for every odd q <= 200") {
  for (std::uint64_t q = 3; q <= 200; q += 2) {
    const RingContext ctx = build_context(q);
    const LeaderBasis basis = canonical_leaders(ctx);
    REQUIRE(basis.leaders.size() * basis.span_size == ctx.phi);
    std::set<std::uint64_t> covered;
    for (std::uint64_t b : basis.leaders) {
      const auto orbit = pm2_orbit(b, ctx);
      REQUIRE(orbit.size() == basis.span_size);
      for (std::uint64_t e : orbit) REQUIRE(covered.insert(e).second);
    }
    REQUIRE(covered.size() == ctx.phi);
    REQUIRE(basis.leaders.front() == 1);
  }
}

TEST_CASE("build_block") {
  const RingContext c7 = build_context(7);
  const GeometricBlock b1 = build_block(1, signs_of("+++"), c7);
  CHECK(b1.residues == std::vector<std::uint64_t>{1, 2, 4});
  CHECK(b1.s_plus == 7);
  CHECK(b1.sign_encoding() == 7);

  const GeometricBlock b2 = build_block(1, signs_of("+--"), c7);
  CHECK(b2.residues == std::vector<std::uint64_t>{1, 5, 3});
  CHECK(b2.s_plus == 1);

  const RingContext c5 = build_context(5);
  // mirrored vector: +-+- satisfies the pairing (sign_1=sign_3, sign_2=sign_4)
  const GeometricBlock b3 = build_block(1, signs_of("+-+-"), c5);
  CHECK(b3.residues == std::vector<std::uint64_t>{1, 3, 4, 2});
  // +--+ breaks it at the (1,3) pair
  CHECK_THROWS_WITH_AS(build_block(1, signs_of("+--+"), c5),
                       doctest::Contains("positions 1 and 3"), ConstraintError);
  CHECK_THROWS_AS(build_block(3, signs_of("+++"), build_context(9)), DomainError);
  CHECK_THROWS_AS(build_block(1, signs_of("++"), c7), DomainError);  // wrong length
}

TEST_CASE("assemble_multiset") {
  const RingContext c7 = build_context(7);
  {
    const auto a = assemble_multiset(std::vector{build_block(1, signs_of("+++"), c7)});
    CHECK(a.multiset == ResidueMultiset(7, {1, 2, 4}));
    CHECK(a.s_plus == 7);
    CHECK(a.s_minus == 0);
    CHECK(a.sum_ok);
    CHECK(a.deviation_residue == 0);
  }
  {
    const auto a = assemble_multiset(std::vector{build_block(1, signs_of("+--"), c7)});
    CHECK(a.multiset == ResidueMultiset(7, {1, 5, 3}));
    CHECK(a.s_plus == 1);
    CHECK(a.s_minus == 6);
    CHECK_FALSE(a.sum_ok);
    CHECK(a.deviation_residue == 1);
  }
  {
    const auto a = assemble_multiset(std::vector{build_block(1, signs_of("---"), c7),
                                                 build_block(1, signs_of("+++"), c7)});
    CHECK(a.multiset == ResidueMultiset(7, {6, 5, 3, 1, 2, 4}));
    CHECK(a.sum_ok);
  }
  const RingContext c5 = build_context(5);
  CHECK_THROWS_AS(assemble_multiset(std::vector{build_block(1, signs_of("+++"), c7),
                                                build_block(1, signs_of("++++"), c5)}),
                  DomainError);
  CHECK_THROWS_AS(assemble_multiset(std::vector<GeometricBlock>{}), DomainError);
}

TEST_CASE("predicted profile matches the frozen examples") {
  const RingContext c7 = build_context(7);
  CHECK(predicted_profile(std::vector{build_block(1, signs_of("+++"), c7)}).counts ==
        std::vector<BigInt>{1, 1, 1, 1, 1, 1, 1});
  CHECK(predicted_profile(std::vector{build_block(1, signs_of("+--"), c7)}).counts ==
        std::vector<BigInt>{0, 2, 1, 1, 1, 1, 1});  // +1 lands at S+ mod q = 1
}

TEST_CASE("decompose examples") {
  const RingContext c7 = build_context(7);
  {
    const auto out = decompose(ResidueMultiset(7, {3, 5, 6}), c7);
    REQUIRE(out.ok());
    REQUIRE(out.decomposition->blocks.size() == 1);
    CHECK(out.decomposition->blocks[0].leader == 3);
    CHECK(out.decomposition->blocks[0].signs == std::vector<int>{1, 1, 1});
    CHECK(out.decomposition->blocks[0].residues == std::vector<std::uint64_t>{3, 6, 5});
  }
  {
    // naive intuition fails here: 1 -> 2 -> 3 closes through -4 = 3
    const auto out = decompose(ResidueMultiset(7, {1, 2, 3}), c7);
    REQUIRE(out.ok());
    CHECK(out.decomposition->blocks[0].leader == 1);
    CHECK(out.decomposition->blocks[0].signs == std::vector<int>{1, 1, -1});
  }
  {
    const RingContext c17 = build_context(17);
    ResidueMultiset a(17);
    for (std::uint64_t u : c17.units) a.add(u);
    const auto out = decompose(a, c17);
    REQUIRE(out.ok());
    REQUIRE(out.decomposition->blocks.size() == 2);
    CHECK(out.decomposition->blocks[0].leader == 1);
    CHECK(out.decomposition->blocks[1].leader == 3);
  }
  {
    ResidueMultiset a(7);
    a.add(1, 3);
    const auto out = decompose(a, c7);
    REQUIRE_FALSE(out.ok());
    CHECK(out.obstruction->orbit == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});
  }
  CHECK_THROWS_AS(decompose(ResidueMultiset(9, {3}), build_context(9)), DomainError);
  CHECK_THROWS_AS(decompose(ResidueMultiset(8, {1}), build_context(8)), DomainError);
}

TEST_CASE("decompose round-trips random assemblies") {
  std::map<std::uint64_t, RingContext> ctxs;
  for (std::uint64_t q : {5, 7, 9, 11, 13, 17, 23}) ctxs.emplace(q, build_context(q));
  Rng rng(4711);
  const std::uint64_t moduli[] = {5, 7, 9, 11, 13, 17, 23};
  for (int i = 0; i < 1000; ++i) {
    const RingContext& ctx = ctxs.at(moduli[rng.below(7)]);
    const auto blocks = random_block_list(rng, ctx);
    const Assembly a = assemble_multiset(blocks);
    const auto out = decompose(a.multiset, ctx);
    REQUIRE(out.ok());
    REQUIRE(assemble_multiset(out.decomposition->blocks).multiset == a.multiset);
    for (const auto& blk : out.decomposition->blocks) REQUIRE(blk.residues.size() == ctx.r());
  }
}

TEST_CASE("sign encoding is injective for fixed leader") {
  // odd r: all 2^r sign vectors
  for (std::uint64_t q : {7, 23}) {
    const RingContext ctx = build_context(q);
    const std::uint64_t r = ctx.r();
    std::set<BigInt> seen;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << r); ++bits) {
      std::vector<int> signs(r);
      for (std::uint64_t j = 0; j < r; ++j) signs[j] = (bits >> j & 1) ? 1 : -1;
      const GeometricBlock blk = build_block(1, signs, ctx);
      REQUIRE(seen.insert(blk.sign_encoding()).second);
      REQUIRE(blk.sign_encoding() == bits);
    }
  }
  // even r: the 2^(r/2) paired vectors
  for (std::uint64_t q : {5, 17}) {
    const RingContext ctx = build_context(q);
    const std::uint64_t r = ctx.r();
    std::set<BigInt> seen;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (r / 2)); ++bits) {
      std::vector<int> signs(r);
      for (std::uint64_t j = 0; j < r / 2; ++j)
        signs[j] = signs[j + r / 2] = (bits >> j & 1) ? 1 : -1;
      REQUIRE(seen.insert(build_block(1, signs, ctx).sign_encoding()).second);
    }
  }
}

TEST_CASE("composite moduli: pairing applies only when 2^(r/2) = -1") {
  // n=21: r=6 but 2^3 = 8, so unpaired sign vectors are valid blocks
  const RingContext c21 = build_context(21);
  const GeometricBlock blk = build_block(1, signs_of("+++++-"), c21);
  CHECK(blk.residues == std::vector<std::uint64_t>{1, 2, 4, 8, 16, 10});

  // n=33: 2^5 = 32 = -1, so the pairing rule does bind
  const RingContext c33 = build_context(33);
  CHECK_THROWS_AS(build_block(1, signs_of("+++++-++++"), c33), ConstraintError);
  CHECK(build_block(1, signs_of("+-+-++-+-+"), c33).residues.size() == 10);
}

TEST_CASE("composite moduli: blocks still produce the predicted profile") {
  Rng rng(99);
  for (std::uint64_t n : {15, 21, 33}) {
    const RingContext ctx = build_context(n);
    const std::uint64_t r = ctx.r();
    const bool free_signs = !(r % 2 == 0 && mod_pow(2, r / 2, n) == n - 1);
    for (int i = 0; i < 60; ++i) {
      std::vector<GeometricBlock> blocks;
      const std::uint64_t count = 1 + rng.below(2);
      for (std::uint64_t b = 0; b < count; ++b) {
        const std::uint64_t leader = ctx.units[rng.below(ctx.units.size())];
        std::vector<int> signs(r, 1);
        if (free_signs)
          for (auto& s : signs) s = rng.flip() ? 1 : -1;
        else
          for (std::uint64_t j = 0; j < r / 2; ++j)
            signs[j] = signs[j + r / 2] = rng.flip() ? 1 : -1;
        blocks.push_back(build_block(leader, signs, ctx));
      }
      const Assembly a = assemble_multiset(blocks);
      REQUIRE(predicted_profile(blocks) == subset_sum_distribution(a.multiset));
      const auto out = decompose(a.multiset, ctx);
      REQUIRE(out.ok());
      REQUIRE(assemble_multiset(out.decomposition->blocks).multiset == a.multiset);
    }
  }
}

TEST_CASE("decomposition guarantee branches") {
  const RingContext c7 = build_context(7);
  CHECK(decomposition_guarantee(c7, ResidueMultiset(7, {1, 2, 4})).branch ==
        GuaranteeBranch::prime_power);

  const RingContext c15 = build_context(15);
  const GuaranteeReport ok = decomposition_guarantee(c15, ResidueMultiset(15, {2, 4}));
  CHECK(ok.applicable);
  CHECK(ok.branch == GuaranteeBranch::composite_conditions);

  // 7 = (q-1)/2 is excluded
  const GuaranteeReport no = decomposition_guarantee(c15, ResidueMultiset(15, {2, 7}));
  CHECK_FALSE(no.applicable);
  CHECK(no.branch == GuaranteeBranch::none);

  CHECK_THROWS_AS(decomposition_guarantee(build_context(8), ResidueMultiset(8, {1})),
                  DomainError);
}
