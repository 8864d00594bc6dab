#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqdist/bigint.hpp"
#include "eqdist/blocks.hpp"
#include "eqdist/ring.hpp"

namespace eqdist {

constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

/// The congruence b.x = 0 (mod q) where b runs over the n_vars-subsets of a
/// unit pool and each x_i ranges over {0, 1, ..., k*q}.
struct CongruenceFamily {
  std::uint64_t modulus = 0;          // q, odd
  std::vector<std::uint64_t> pool;    // distinct units, sorted
  std::uint64_t n_vars = 0;           // entries selected per solution
  std::uint64_t k = 1;                // x range is [0, k*q]
};

/// Closed form (1/q) * C(t, n) * ((kq+1)^n + q - 1); the division is exact
/// and asserted.
BigInt congruence_solution_formula(const CongruenceFamily& fam);

/// Exhaustive count over (subset, vector) pairs. Throws ResourceError when
/// C(t, n) * (kq+1)^n exceeds the budget.
BigInt congruence_solution_bruteforce(const CongruenceFamily& fam,
                                      std::uint64_t budget = kDefaultBudget);

/// Closed-form count of equidistributed configurations over an odd prime
/// power q:
///   odd r:  -1 + (1/q) * ((2^r + 2)^(phi/2r) + (q-1) * 3^(phi/2r))
///   even r: (2^(r/2) + 1)^(phi/r) - 1
BigInt equidistributed_count_formula(const RingContext& ctx);

/// Result of enumerating (leader multiplicity, sign choice) configurations
/// whose element sum vanishes mod q. Distinct residue sets are deduplicated
/// because even-r sign tuples all materialize the same set.
struct ConstructionEnumeration {
  BigInt configurations;
  std::vector<std::vector<std::uint64_t>> distinct_sets;  // each sorted; list sorted
};

ConstructionEnumeration enumerate_by_construction(const RingContext& ctx,
                                                  std::uint64_t budget = kDefaultBudget,
                                                  int jobs = 1);

/// Exhaustive subset scan of the unit group for equidistributed non-empty-sum
/// profiles. Masks are iterated in ascending numeric order over the sorted
/// unit list. With pruning enabled, subsets whose size or sum already violate
/// the necessary conditions are skipped before the distribution is computed;
/// disable pruning to test those very conditions.
struct CensusResult {
  std::vector<std::vector<std::uint64_t>> sets;  // ascending mask order
};

CensusResult brute_force_census(const RingContext& ctx, std::uint64_t budget = kDefaultBudget,
                                int jobs = 1, bool prune = true);

struct CountFlags {
  bool formula_vs_config = false;
  bool formula_vs_sets = false;
  std::optional<bool> sets_vs_bruteforce;  // engaged only when the census ran

  bool operator==(const CountFlags&) const = default;
};

/// Formula value vs. enumerated configurations vs. distinct sets vs. census,
/// with comparison flags. Never asserts agreement; callers decide what a
/// mismatch means.
struct CountReport {
  std::uint64_t modulus = 0;
  std::uint64_t r = 0;
  std::uint64_t phi = 0;
  ParityCase parity = ParityCase::odd_r;
  BigInt formula_value;
  BigInt configuration_count;
  BigInt distinct_set_count;
  std::optional<BigInt> brute_force_count;
  std::string brute_force_note;  // "skipped: budget" when the census did not run
  CountFlags flags;

  bool operator==(const CountReport&) const = default;
};

CountReport reconcile_counts(const RingContext& ctx, std::uint64_t budget = kDefaultBudget,
                             int jobs = 1);

}  // namespace eqdist
