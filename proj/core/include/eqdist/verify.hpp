#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqdist/counting.hpp"
#include "eqdist/distribution.hpp"
#include "eqdist/multiset.hpp"

namespace eqdist {

struct VerifyOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::uint64_t budget = kDefaultBudget;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> notes;

  bool operator==(const CheckResult&) const = default;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::vector<CheckResult> checks;
  bool pass = false;

  bool operator==(const VerifyReport&) const = default;
};

/// Independent oracle: the profile computed by walking all 2^k subsets
/// directly. Shares no code with the convolution path it cross-checks.
DistributionProfile enumeration_profile(const ResidueMultiset& a);

// One check per constructive statement the library reproduces.
CheckResult check_full_group_uniform(const VerifyOptions& opts);        // thm1
CheckResult check_necessary_conditions(const VerifyOptions& opts);      // thm2
CheckResult check_even_modulus_impossible(const VerifyOptions& opts);   // even
CheckResult check_bruteforce_decomposition(const VerifyOptions& opts);  // thm4
CheckResult check_block_profiles(const VerifyOptions& opts);            // thm5
CheckResult check_congruence_grid(const VerifyOptions& opts);           // lemma1
CheckResult check_count_reconciliation_odd(const VerifyOptions& opts);  // thm6, odd r
CheckResult check_count_reconciliation_even(const VerifyOptions& opts); // thm6, even r
CheckResult check_dp_oracle(const VerifyOptions& opts);                 // oracle

/// Runs the checks named by the selector: one of
/// all | thm1 | thm2 | even | thm4 | thm5 | lemma1 | thm6 | oracle.
VerifyReport run_verify(const std::string& selector, const VerifyOptions& opts);

}  // namespace eqdist
