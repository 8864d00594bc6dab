#include "eqdist/blocks.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "eqdist/errors.hpp"

namespace eqdist {

const char* to_string(ParityCase c) {
  return c == ParityCase::odd_r ? "odd_r" : "even_r";
}

const char* to_string(GuaranteeBranch b) {
  switch (b) {
    case GuaranteeBranch::prime_power: return "prime_power";
    case GuaranteeBranch::composite_conditions: return "composite_conditions";
    case GuaranteeBranch::none: return "none";
  }
  return "none";
}

BigInt GeometricBlock::chain_total() const {
  return BigInt(leader) * (pow2(signs.size()) - 1);
}

BigInt GeometricBlock::sign_encoding() const { return s_plus / leader; }

GeometricBlock build_block(std::uint64_t leader, std::span<const int> signs,
                           const RingContext& ctx) {
  const std::uint64_t q = ctx.n;
  const std::uint64_t r = ctx.r();
  leader %= q;
  if (!ctx.is_unit(leader))
    throw DomainError("build_block: leader " + std::to_string(leader) + " is not a unit mod " +
                      std::to_string(q));
  if (signs.size() != r)
    throw DomainError("build_block: expected " + std::to_string(r) + " signs, got " +
                      std::to_string(signs.size()));
  for (int s : signs)
    if (s != 1 && s != -1) throw DomainError("build_block: signs must be +1 or -1");
  // Unequal signs at positions j and j+r/2 collide exactly when 2^(r/2) = -1,
  // which holds for every prime power with even r; composite moduli where
  // 2^(r/2) is neither root leave all sign vectors valid.
  if (r % 2 == 0 && mod_pow(2, r / 2, q) == q - 1) {
    for (std::uint64_t j = 0; j < r / 2; ++j)
      if (signs[j] != signs[j + r / 2])
        throw ConstraintError("sign pairing violated: positions " + std::to_string(j + 1) +
                              " and " + std::to_string(j + 1 + r / 2) +
                              " must carry the same sign (2^(r/2) = -1 mod q)");
  }

  GeometricBlock blk;
  blk.modulus = q;
  blk.leader = leader;
  blk.signs.assign(signs.begin(), signs.end());
  blk.residues.reserve(r);
  BigInt x = 0;  // positive-position encoding
  std::uint64_t pos = leader;  // b * 2^(j-1) mod q
  for (std::uint64_t j = 0; j < r; ++j) {
    blk.residues.push_back(signs[j] > 0 ? pos : (q - pos) % q);
    if (signs[j] > 0) x += pow2(j);
    pos = pos * 2 % q;
  }
  blk.s_plus = BigInt(leader) * x;

  std::set<std::uint64_t> distinct(blk.residues.begin(), blk.residues.end());
  if (distinct.size() != r)
    throw std::logic_error("build_block: residues collide");  // unreachable for valid signs
  return blk;
}

std::vector<std::uint64_t> pm2_orbit(std::uint64_t b, const RingContext& ctx) {
  const std::uint64_t q = ctx.n;
  const std::uint64_t r = ctx.r();
  b %= q;
  if (!ctx.is_unit(b))
    throw DomainError("pm2_orbit: " + std::to_string(b) + " is not a unit mod " +
                      std::to_string(q));
  std::set<std::uint64_t> span;
  std::uint64_t cur = b;
  for (std::uint64_t j = 0; j < r; ++j) {
    span.insert(cur);
    span.insert((q - cur) % q);
    cur = cur * 2 % q;
  }
  return {span.begin(), span.end()};
}

LeaderBasis canonical_leaders(const RingContext& ctx) {
  if (!ctx.is_odd)
    throw DomainError("canonical_leaders: modulus " + std::to_string(ctx.n) + " must be odd");
  const std::uint64_t r = ctx.r();
  LeaderBasis basis;
  basis.modulus = ctx.n;
  basis.parity = (r % 2 == 1) ? ParityCase::odd_r : ParityCase::even_r;
  // Orbits are cosets of <2, -1>. The span halves to r exactly when -1 is a
  // power of 2, i.e. 2^(r/2) = -1; that always holds for prime powers with
  // even r but can fail for composite moduli (q=21: 2^3 = 8, not -1).
  const bool minus_one_in_two_powers =
      r % 2 == 0 && mod_pow(2, r / 2, ctx.n) == ctx.n - 1;
  basis.span_size = minus_one_in_two_powers ? r : 2 * r;
  std::vector<bool> covered(ctx.n, false);
  for (std::uint64_t u : ctx.units) {
    if (covered[u]) continue;
    basis.leaders.push_back(u);
    for (std::uint64_t e : pm2_orbit(u, ctx)) covered[e] = true;
  }
  if (basis.leaders.size() * basis.span_size != ctx.phi)
    throw std::logic_error("canonical_leaders: spans do not partition the units");
  return basis;
}

Assembly assemble_multiset(std::span<const GeometricBlock> blocks) {
  if (blocks.empty()) throw DomainError("assemble_multiset: block list is empty");
  const std::uint64_t q = blocks.front().modulus;
  for (const auto& b : blocks)
    if (b.modulus != q)
      throw DomainError("assemble_multiset: blocks mix moduli " + std::to_string(q) + " and " +
                        std::to_string(b.modulus));

  Assembly out{ResidueMultiset(q), 0, 0, false, 0};
  BigInt total = 0;
  for (const auto& b : blocks) {
    for (std::uint64_t e : b.residues) out.multiset.add(e);
    out.s_plus += b.s_plus;
    total += b.chain_total();
  }
  out.s_minus = total - out.s_plus;
  out.deviation_residue = static_cast<std::uint64_t>(out.s_plus % q);
  out.sum_ok = (out.deviation_residue == 0);
  if (out.sum_ok != (out.multiset.sum_mod() == 0))
    throw std::logic_error("assemble_multiset: sum bookkeeping disagrees");  // unreachable
  return out;
}

DistributionProfile predicted_profile(std::span<const GeometricBlock> blocks) {
  Assembly asmb = assemble_multiset(blocks);
  const std::uint64_t q = asmb.multiset.modulus();
  const std::uint64_t k = asmb.multiset.cardinality();
  BigInt total = pow2(k) - 1;
  if (total % q != 0)
    throw std::logic_error("predicted_profile: k is a multiple of r, 2^k - 1 must be divisible");
  BigInt base = total / q;
  std::vector<BigInt> counts(q, base);
  counts[asmb.deviation_residue] += 1;
  counts[0] -= 1;
  return DistributionProfile{q, std::move(counts), false};
}

namespace {

// Per-orbit chain search state. Multiplicities live in a sorted residue ->
// count map so iteration order (and therefore the returned decomposition)
// is deterministic.
struct OrbitSearch {
  std::uint64_t q;
  std::uint64_t r;
  std::map<std::uint64_t, std::uint64_t> avail;
  std::uint64_t remaining = 0;
  std::vector<std::vector<std::uint64_t>> chains;

  bool take(std::uint64_t v) {
    auto it = avail.find(v);
    if (it == avail.end() || it->second == 0) return false;
    --it->second;
    --remaining;
    return true;
  }
  void put_back(std::uint64_t v) {
    ++avail[v];
    ++remaining;
  }

  bool extend(std::vector<std::uint64_t>& chain) {
    if (chain.size() == r) {
      // closure a_1 = ±2 a_r holds automatically since 2^r = 1 (mod q)
      chains.push_back(chain);
      if (start_chain()) return true;
      chains.pop_back();
      return false;
    }
    const std::uint64_t a = chain.back();
    const std::uint64_t plus = a * 2 % q;
    const std::uint64_t minus = (q - plus) % q;
    for (std::uint64_t cand : {plus, minus}) {
      // a chain may not repeat a residue (block residues are distinct)
      if (std::find(chain.begin(), chain.end(), cand) != chain.end()) continue;
      if (!take(cand)) continue;
      chain.push_back(cand);
      if (extend(chain)) return true;
      chain.pop_back();
      put_back(cand);
    }
    return false;
  }

  bool start_chain() {
    if (remaining == 0) return true;
    // Any decomposition can be relabeled so that one chain starts at the
    // least remaining residue, so fixing the start loses no solutions.
    std::uint64_t least = 0;
    for (const auto& [res, cnt] : avail)
      if (cnt > 0) {
        least = res;
        break;
      }
    take(least);
    std::vector<std::uint64_t> chain{least};
    if (extend(chain)) return true;
    put_back(least);
    return false;
  }
};

GeometricBlock block_from_chain(const std::vector<std::uint64_t>& chain,
                                const RingContext& ctx) {
  const std::uint64_t q = ctx.n;
  std::vector<int> signs(chain.size());
  signs[0] = 1;
  for (std::size_t j = 1; j < chain.size(); ++j) {
    const std::uint64_t doubled = chain[j - 1] * 2 % q;
    signs[j] = (chain[j] == doubled) ? signs[j - 1] : -signs[j - 1];
  }
  GeometricBlock blk = build_block(chain[0], signs, ctx);
  if (blk.residues != chain) throw std::logic_error("block_from_chain: residue mismatch");
  return blk;
}

}  // namespace

DecomposeOutcome decompose(const ResidueMultiset& a, const RingContext& ctx) {
  if (a.modulus() != ctx.n)
    throw DomainError("decompose: multiset modulus " + std::to_string(a.modulus()) +
                      " does not match context modulus " + std::to_string(ctx.n));
  if (!ctx.is_odd)
    throw DomainError("decompose: modulus " + std::to_string(ctx.n) + " must be odd");
  for (const auto& [res, mult] : a.entries())
    if (!ctx.is_unit(res))
      throw DomainError("decompose: element " + std::to_string(res) + " is not a unit mod " +
                        std::to_string(ctx.n));

  const std::uint64_t r = ctx.r();

  // Bucket elements by ±2 orbit, keyed by the orbit's least element.
  std::map<std::uint64_t, OrbitSearch> buckets;
  for (const auto& [res, mult] : a.entries()) {
    std::vector<std::uint64_t> orbit = pm2_orbit(res, ctx);
    OrbitSearch& bucket = buckets[orbit.front()];
    bucket.q = ctx.n;
    bucket.r = r;
    bucket.avail[res] += mult;
    bucket.remaining += mult;
  }

  Decomposition dec;
  dec.modulus = ctx.n;
  BigInt total = 0;
  for (auto& [rep, bucket] : buckets) {
    if (bucket.remaining % r != 0) {
      return DecomposeOutcome{
          std::nullopt,
          OrbitObstruction{pm2_orbit(rep, ctx),
                           "orbit multiplicity " + std::to_string(bucket.remaining) +
                               " is not divisible by r = " + std::to_string(r)}};
    }
    if (!bucket.start_chain()) {
      return DecomposeOutcome{
          std::nullopt,
          OrbitObstruction{pm2_orbit(rep, ctx), "orbit chain infeasible: no ±2 chain cover"}};
    }
    for (const auto& chain : bucket.chains) {
      GeometricBlock blk = block_from_chain(chain, ctx);
      dec.s_plus += blk.s_plus;
      total += blk.chain_total();
      dec.blocks.push_back(std::move(blk));
    }
  }
  dec.s_minus = total - dec.s_plus;
  return DecomposeOutcome{std::move(dec), std::nullopt};
}

GuaranteeReport decomposition_guarantee(const RingContext& ctx, const ResidueMultiset& a) {
  if (!ctx.is_odd)
    throw DomainError("decomposition_guarantee: modulus must be odd");
  if (ctx.is_prime_power) return {true, GuaranteeBranch::prime_power};
  const std::uint64_t q = ctx.n;
  RootConditionReport cond = composite_root_conditions(q);
  if (cond.applicable) {
    bool excluded_present = false;
    for (std::uint64_t bad : {std::uint64_t{1}, (q - 1) / 2, (q + 1) / 2, q - 1})
      for (const auto& [res, mult] : a.entries())
        if (res == bad) excluded_present = true;
    if (!excluded_present) return {true, GuaranteeBranch::composite_conditions};
  }
  return {false, GuaranteeBranch::none};
}

}  // namespace eqdist
