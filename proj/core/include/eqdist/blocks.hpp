#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqdist/bigint.hpp"
#include "eqdist/distribution.hpp"
#include "eqdist/multiset.hpp"
#include "eqdist/ring.hpp"

namespace eqdist {

/// A length-r chain {sign_j * b * 2^(j-1) mod q}. Whenever 2^(r/2) = -1
/// (mod q) — every prime power with even r — the signs must satisfy
/// sign_j = sign_{j+r/2}, otherwise residues would collide.
struct GeometricBlock {
  std::uint64_t modulus = 0;
  std::uint64_t leader = 0;
  std::vector<int> signs;               // entries +1 / -1, length r
  std::vector<std::uint64_t> residues;  // e_j in chain order
  BigInt s_plus;                        // sum of b * 2^(j-1) over positive positions

  /// b * (2^r - 1): the full unsigned chain sum; always 0 mod q.
  BigInt chain_total() const;

  /// s_plus / leader: the integer in [0, 2^r - 1] whose binary digits mark
  /// the positively signed positions.
  BigInt sign_encoding() const;

  bool operator==(const GeometricBlock&) const = default;
};

/// Validates the sign vector and computes residues and s_plus.
GeometricBlock build_block(std::uint64_t leader, std::span<const int> signs,
                           const RingContext& ctx);

/// {±b * 2^(j-1) mod q : 1 <= j <= r}, sorted. For prime powers the size is
/// 2r when r is odd and r when r is even; for composite q it is r exactly
/// when 2^(r/2) = -1 (mod q) and 2r otherwise.
std::vector<std::uint64_t> pm2_orbit(std::uint64_t b, const RingContext& ctx);

enum class ParityCase { odd_r, even_r };
const char* to_string(ParityCase c);

/// Greedy least-available leaders whose ±2 spans partition the unit group.
struct LeaderBasis {
  std::uint64_t modulus = 0;
  ParityCase parity = ParityCase::odd_r;
  std::vector<std::uint64_t> leaders;  // sorted, leaders[0] == 1
  std::uint64_t span_size = 0;         // 2r (odd r) or r (even r)

  std::uint64_t t() const { return leaders.size(); }
};

LeaderBasis canonical_leaders(const RingContext& ctx);

/// The multiset union of a block list plus its sign bookkeeping.
/// s_minus is the unsigned magnitude sum(b * 2^(j-1)) over negative positions;
/// the signed negative-part sum is -s_minus, congruent to s_plus mod q.
struct Assembly {
  ResidueMultiset multiset;
  BigInt s_plus;
  BigInt s_minus;
  bool sum_ok = false;               // element sum = 0 (mod q), iff s_plus = 0 (mod q)
  std::uint64_t deviation_residue = 0;  // s_plus mod q; where the +1 deviation lands
};

Assembly assemble_multiset(std::span<const GeometricBlock> blocks);

/// Closed-form profile of a block union: (2^k - 1)/q everywhere, +1 at the
/// deviation residue, -1 at 0. Uniform exactly when the element sum is 0.
DistributionProfile predicted_profile(std::span<const GeometricBlock> blocks);

struct Decomposition {
  std::uint64_t modulus = 0;
  std::vector<GeometricBlock> blocks;
  BigInt s_plus;
  BigInt s_minus;
};

struct OrbitObstruction {
  std::vector<std::uint64_t> orbit;  // sorted span that cannot be partitioned
  std::string reason;
};

struct DecomposeOutcome {
  std::optional<Decomposition> decomposition;
  std::optional<OrbitObstruction> obstruction;

  bool ok() const { return decomposition.has_value(); }
};

/// Backtracking partition of A into ±2 chains of length exactly r.
/// Elements must all be units; the modulus must be odd. Deterministic:
/// chains start at the least remaining residue and prefer the +2 successor,
/// so the first solution found is lexicographically least by
/// (leader, sign vector).
DecomposeOutcome decompose(const ResidueMultiset& a, const RingContext& ctx);

enum class GuaranteeBranch { prime_power, composite_conditions, none };
const char* to_string(GuaranteeBranch b);

struct GuaranteeReport {
  bool applicable = false;
  GuaranteeBranch branch = GuaranteeBranch::none;
};

/// Whether the decomposition of an equidistributed A into ±2 blocks is
/// guaranteed: unconditionally for odd prime powers, for qualifying
/// composites only when A avoids {1, (q-1)/2, (q+1)/2, q-1}. A "none" result
/// only withdraws the guarantee; decompose may still be attempted.
GuaranteeReport decomposition_guarantee(const RingContext& ctx, const ResidueMultiset& a);

}  // namespace eqdist
