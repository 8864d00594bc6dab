#pragma once

#include <cstdint>
#include <vector>

#include "eqdist/bigint.hpp"
#include "eqdist/multiset.hpp"
#include "eqdist/ring.hpp"

namespace eqdist {

/// Exact per-residue-class counts of subset sums. counts[m] is the number of
/// non-empty sub-multisets (elements distinguishable by occurrence) whose sum
/// is m mod n. The empty sum is counted into counts[0] only when
/// includes_empty is set; that convention is always an explicit opt-in.
struct DistributionProfile {
  std::uint64_t modulus = 0;
  std::vector<BigInt> counts;
  bool includes_empty = false;

  BigInt total() const;
  DistributionProfile including_empty() const;

  bool operator==(const DistributionProfile&) const = default;
};

/// Exact distribution of the non-empty subset sums of A, computed by
/// per-residue convolution over the element occurrences.
DistributionProfile subset_sum_distribution(const ResidueMultiset& a);

/// All classes hit equally often. Requires a non-empty-sum profile.
/// Vacuously true for the all-zero profile of an empty multiset.
bool is_equidistributed(const DistributionProfile& p);

/// (2^k - 1) / n, exact. Throws DomainError unless n divides 2^k - 1.
BigInt uniform_count(std::uint64_t k, std::uint64_t n);

struct NecessaryConditions {
  bool pow2_ok = false;  // 2^k = 1 (mod n)
  bool sum_ok = false;   // sum of elements = 0 (mod n)
  bool operator==(const NecessaryConditions&) const = default;
};

/// The two arithmetic conditions every equidistributed multiset satisfies.
NecessaryConditions necessary_conditions(const ResidueMultiset& a);

/// Remainder of a polynomial modulo (x^n - 1)/(x - 1), degree < n-1.
struct PolyRemainder {
  std::uint64_t modulus = 0;
  std::vector<BigInt> coeffs;  // length n-1, signed

  bool is_one() const;
  bool operator==(const PolyRemainder&) const = default;
};

struct PolyIdentityResult {
  PolyRemainder remainder;
  bool holds = false;  // remainder is the constant polynomial 1
};

/// Reduces prod_i (1 + x^{a_i}) over the integers modulo (x^n - 1)/(x - 1),
/// reducing after every factor. holds iff the remainder is 1, which happens
/// exactly when the non-empty subset sums are equidistributed.
PolyIdentityResult poly_identity_check(const ResidueMultiset& a);

/// Partition of the unit group into doubling chains {b * 2^(m-1) : 1 <= m <= r},
/// leaders chosen greedily least-first starting from 1. Odd modulus only.
std::vector<std::vector<std::uint64_t>> coset_chain_partition(const RingContext& ctx);

}  // namespace eqdist
