#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "eqdist/counting.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/reports.hpp"
#include "eqdist/textio.hpp"
#include "eqdist/verify.hpp"

namespace {

// Exit codes: 0 success, 2 domain error, 3 resource/budget, 4 verification failure.
constexpr int kExitDomain = 2;
constexpr int kExitResource = 3;
constexpr int kExitVerification = 4;

struct CommonOpts {
  bool json = false;
  std::uint64_t budget = eqdist::kDefaultBudget;
  int jobs = 1;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_flag("--json", opts.json, "emit a machine-readable JSON report");
  cmd->add_option("--budget", opts.budget, "enumeration budget (subsets / configurations)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--jobs", opts.jobs, "parallel workers; output is identical at any degree")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "seed for the property batteries")
      ->capture_default_str();
}

void print_notices(const std::vector<std::string>& notices) {
  for (const auto& n : notices) std::cerr << "note: " << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eqdist: construct, verify, decompose and count multisets of residues\n"
               "whose non-empty subset sums are equidistributed modulo n"};
  app.require_subcommand(1);

  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> moduli;
  std::string multiset_lit;
  std::string blocks_lit;
  std::string selector = "all";
  CommonOpts analyze_opts, construct_opts, decompose_opts, count_opts, verify_opts;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "profile the non-empty subset sums of a multiset");
  analyze->add_option("-n,--modulus", modulus, "modulus (>= 3)")->required();
  analyze->add_option("-A,--multiset", multiset_lit, "multiset literal, e.g. 1,2^3,4")
      ->required();
  add_common(analyze, analyze_opts);

  CLI::App* construct = app.add_subcommand(
      "construct", "assemble ±2 blocks and compare predicted vs. actual profile");
  construct->add_option("-n,--modulus", modulus, "odd modulus (>= 3)")->required();
  construct->add_option("-B,--blocks", blocks_lit, "block spec, e.g. 1:+++;3:+--")->required();
  add_common(construct, construct_opts);

  CLI::App* decompose = app.add_subcommand(
      "decompose", "partition a multiset of units into ±2 geometric blocks");
  decompose->add_option("-n,--modulus", modulus, "odd modulus (>= 3)")->required();
  decompose->add_option("-A,--multiset", multiset_lit, "multiset literal")->required();
  add_common(decompose, decompose_opts);

  CLI::App* count = app.add_subcommand(
      "count", "reconcile the closed-form count with enumeration and census");
  count->add_option("-n,--modulus", moduli, "odd prime power (repeatable)")->required();
  add_common(count, count_opts);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("selector", selector,
                     "all|thm1|thm2|even|thm4|thm5|lemma1|thm6|oracle")
      ->capture_default_str();
  add_common(verify, verify_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitDomain;
  }

  try {
    if (*analyze) {
      std::vector<std::string> notices;
      const auto a = eqdist::parse_multiset_literal(multiset_lit, modulus, &notices);
      print_notices(notices);
      const auto rep = eqdist::run_analyze(a);
      std::cout << (analyze_opts.json ? eqdist::to_json(rep) + "\n" : eqdist::render_text(rep));
      return 0;
    }
    if (*construct) {
      const auto ctx = eqdist::build_context(modulus);
      const auto blocks = eqdist::parse_block_spec(blocks_lit, ctx);
      const auto rep = eqdist::run_construct(blocks);
      std::cout << (construct_opts.json ? eqdist::to_json(rep) + "\n"
                                        : eqdist::render_text(rep));
      return 0;
    }
    if (*decompose) {
      const auto ctx = eqdist::build_context(modulus);
      std::vector<std::string> notices;
      const auto a = eqdist::parse_multiset_literal(multiset_lit, modulus, &notices);
      print_notices(notices);
      const auto rep = eqdist::run_decompose(a, ctx);
      std::cout << (decompose_opts.json ? eqdist::to_json(rep) + "\n"
                                        : eqdist::render_text(rep));
      return 0;
    }
    if (*count) {
      std::vector<eqdist::CountReport> reports;
      for (std::uint64_t q : moduli) {
        eqdist::RingContext ctx = eqdist::build_context(q);
        if (!ctx.is_odd || !ctx.is_prime_power) {
          std::cerr << "note: " << q << " skipped: not an odd prime power\n";
          continue;
        }
        reports.push_back(eqdist::reconcile_counts(ctx, count_opts.budget, count_opts.jobs));
      }
      if (count_opts.json) {
        std::cout << eqdist::to_json_array(reports) << "\n";
      } else {
        for (const auto& rep : reports) std::cout << eqdist::render_text(rep);
      }
      return 0;
    }
    if (*verify) {
      const eqdist::VerifyOptions opts{verify_opts.seed, verify_opts.jobs, verify_opts.budget};
      const auto rep = eqdist::run_verify(selector, opts);
      std::cout << (verify_opts.json ? eqdist::to_json(rep) + "\n" : eqdist::render_text(rep));
      return rep.pass ? 0 : kExitVerification;
    }
  } catch (const eqdist::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const eqdist::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
