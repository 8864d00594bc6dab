#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqdist/bigint.hpp"
#include "eqdist/blocks.hpp"
#include "eqdist/counting.hpp"
#include "eqdist/multiset.hpp"
#include "eqdist/verify.hpp"

namespace eqdist {

using MultisetEntries = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

struct BlockSummary {
  std::uint64_t leader = 0;
  std::string signs;
  std::vector<std::uint64_t> residues;
  BigInt s_plus;

  bool operator==(const BlockSummary&) const = default;
};

struct AnalyzeReport {
  std::uint64_t modulus = 0;
  std::uint64_t phi = 0;
  std::optional<std::uint64_t> r;
  MultisetEntries multiset;
  std::uint64_t k = 0;
  std::vector<BigInt> profile;
  bool uniform = false;
  bool pow2_ok = false;
  bool sum_ok = false;
  bool poly_identity = false;

  bool operator==(const AnalyzeReport&) const = default;
};

struct ConstructReport {
  std::uint64_t modulus = 0;
  std::uint64_t phi = 0;
  std::uint64_t r = 0;
  std::vector<BlockSummary> blocks;
  MultisetEntries multiset;
  std::uint64_t k = 0;
  BigInt s_plus;
  BigInt s_minus;
  std::uint64_t deviation_residue = 0;
  bool sum_ok = false;
  std::vector<BigInt> predicted_profile;
  std::vector<BigInt> profile;
  bool uniform = false;
  bool prediction_matches = false;

  bool operator==(const ConstructReport&) const = default;
};

struct DecomposeReport {
  std::uint64_t modulus = 0;
  std::uint64_t phi = 0;
  std::uint64_t r = 0;
  MultisetEntries multiset;
  bool guarantee_applicable = false;
  std::string guarantee_branch;
  bool decomposed = false;
  std::vector<BlockSummary> blocks;
  std::vector<std::uint64_t> obstruction_orbit;
  std::string obstruction_reason;

  bool operator==(const DecomposeReport&) const = default;
};

AnalyzeReport run_analyze(const ResidueMultiset& a);
ConstructReport run_construct(const std::vector<GeometricBlock>& blocks);
DecomposeReport run_decompose(const ResidueMultiset& a, const RingContext& ctx);

// JSON serialization. Field names are stable; big integers are decimal
// strings. parse_* round-trips exactly what to_json emits.
std::string to_json(const AnalyzeReport& rep);
std::string to_json(const ConstructReport& rep);
std::string to_json(const DecomposeReport& rep);
std::string to_json(const CountReport& rep);
std::string to_json(const VerifyReport& rep);
std::string to_json_array(const std::vector<CountReport>& reps);

AnalyzeReport parse_analyze_report(const std::string& text);
ConstructReport parse_construct_report(const std::string& text);
DecomposeReport parse_decompose_report(const std::string& text);
CountReport parse_count_report(const std::string& text);
VerifyReport parse_verify_report(const std::string& text);

std::string render_text(const AnalyzeReport& rep);
std::string render_text(const ConstructReport& rep);
std::string render_text(const DecomposeReport& rep);
std::string render_text(const CountReport& rep);
std::string render_text(const VerifyReport& rep);

}  // namespace eqdist
