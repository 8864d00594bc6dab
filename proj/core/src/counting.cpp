#include "eqdist/counting.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "eqdist/distribution.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/parallel.hpp"

namespace eqdist {

namespace {

void validate_family(const CongruenceFamily& fam) {
  if (fam.modulus < 3 || fam.modulus % 2 == 0)
    throw DomainError("congruence family: modulus must be odd and >= 3");
  if (fam.k < 1) throw DomainError("congruence family: k must be >= 1");
  if (fam.n_vars > fam.pool.size())
    throw DomainError("congruence family: n_vars exceeds the pool size");
  std::set<std::uint64_t> seen;
  for (std::uint64_t b : fam.pool) {
    if (b == 0 || b >= fam.modulus || gcd_u64(b, fam.modulus) != 1)
      throw DomainError("congruence family: pool element " + std::to_string(b) +
                        " is not a unit mod " + std::to_string(fam.modulus));
    if (!seen.insert(b).second)
      throw DomainError("congruence family: pool elements must be distinct");
  }
}

}  // namespace

BigInt congruence_solution_formula(const CongruenceFamily& fam) {
  validate_family(fam);
  const BigInt inner = ipow(BigInt(fam.k) * fam.modulus + 1, fam.n_vars) + fam.modulus - 1;
  const BigInt num = binomial(fam.pool.size(), fam.n_vars) * inner;
  if (num % fam.modulus != 0)
    throw std::logic_error("congruence_solution_formula: division by q is not exact");
  return num / fam.modulus;
}

BigInt congruence_solution_bruteforce(const CongruenceFamily& fam, std::uint64_t budget) {
  validate_family(fam);
  const std::uint64_t q = fam.modulus;
  const std::uint64_t t = fam.pool.size();
  const std::uint64_t n = fam.n_vars;
  const std::uint64_t range = fam.k * q + 1;  // |X|

  const BigInt cost = binomial(t, n) * ipow(BigInt(range), n);
  if (cost > budget)
    throw ResourceError("congruence brute force needs " + cost.str() +
                        " evaluations, budget is " + std::to_string(budget));

  BigInt count = 0;
  // subsets of the pool in lexicographic index order
  std::vector<std::uint64_t> idx(n);
  for (std::uint64_t i = 0; i < n; ++i) idx[i] = i;
  auto advance_subset = [&]() -> bool {
    if (n == 0) return false;
    std::uint64_t i = n;
    while (i-- > 0) {
      if (idx[i] + (n - i) <= t - 1) {
        ++idx[i];
        for (std::uint64_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };

  std::vector<std::uint64_t> x(n, 0);
  do {
    // odometer over x in [0, kq]^n; for n = 0 the single empty sum counts
    std::fill(x.begin(), x.end(), 0);
    while (true) {
      std::uint64_t s = 0;
      for (std::uint64_t i = 0; i < n; ++i) s = (s + fam.pool[idx[i]] % q * (x[i] % q)) % q;
      if (s == 0) ++count;
      std::uint64_t pos = 0;
      while (pos < n && x[pos] + 1 == range) {
        x[pos] = 0;
        ++pos;
      }
      if (pos == n) break;
      ++x[pos];
    }
  } while (advance_subset());
  return count;
}

BigInt equidistributed_count_formula(const RingContext& ctx) {
  if (!ctx.is_odd || !ctx.is_prime_power)
    throw DomainError("equidistributed_count_formula: modulus " + std::to_string(ctx.n) +
                      " must be an odd prime power");
  const std::uint64_t q = ctx.n;
  const std::uint64_t r = ctx.r();
  if (r % 2 == 1) {
    const std::uint64_t t = ctx.phi / (2 * r);
    const BigInt num = ipow(pow2(r) + 2, t) + BigInt(q - 1) * ipow(3, t);
    if (num % q != 0)
      throw std::logic_error("equidistributed_count_formula: division by q is not exact");
    return num / q - 1;
  }
  const std::uint64_t t = ctx.phi / r;
  return ipow(pow2(r / 2) + 1, t) - 1;
}

namespace {

// Residues of a single signed block without constructing a GeometricBlock:
// bit j of the encoding marks a positive sign at position j+1.
void append_signed_block(std::vector<std::uint64_t>& out, std::uint64_t leader,
                         std::uint64_t encoding, std::uint64_t r, std::uint64_t q) {
  std::uint64_t pos = leader % q;
  for (std::uint64_t j = 0; j < r; ++j) {
    out.push_back((encoding >> j) & 1 ? pos : (q - pos) % q);
    pos = pos * 2 % q;
  }
}

struct OddRChunkResult {
  std::uint64_t configurations = 0;
  std::vector<std::vector<std::uint64_t>> sets;
};

}  // namespace

ConstructionEnumeration enumerate_by_construction(const RingContext& ctx, std::uint64_t budget,
                                                  int jobs) {
  if (!ctx.is_odd || !ctx.is_prime_power)
    throw DomainError("enumerate_by_construction: modulus " + std::to_string(ctx.n) +
                      " must be an odd prime power");
  const std::uint64_t q = ctx.n;
  const std::uint64_t r = ctx.r();
  const LeaderBasis basis = canonical_leaders(ctx);
  const std::uint64_t t = basis.t();

  ConstructionEnumeration out;
  out.configurations = 0;

  if (basis.parity == ParityCase::odd_r) {
    // Per-leader state: 0 absent, 1 full pair, 2+x single block signed by x.
    const BigInt radix_big = pow2(r) + 2;
    BigInt space = 1;
    for (std::uint64_t covered = 0; covered < t; ++covered) {
      space *= radix_big;
      if (space > budget)
        throw ResourceError("construction space " + space.str() + " exceeds budget " +
                            std::to_string(budget) + " at leader " + std::to_string(covered + 1) +
                            " of " + std::to_string(t));
    }
    const std::uint64_t radix = static_cast<std::uint64_t>(radix_big);
    const std::uint64_t total = static_cast<std::uint64_t>(space);

    std::vector<std::vector<std::uint64_t>> spans(t);  // full ± spans per leader
    for (std::uint64_t i = 0; i < t; ++i) spans[i] = pm2_orbit(basis.leaders[i], ctx);

    const std::uint64_t chunk_count = std::max<int>(jobs, 1);
    std::vector<OddRChunkResult> results(std::min<std::uint64_t>(chunk_count, total ? total : 1));
    parallel_chunks(total, static_cast<int>(chunk_count),
                    [&](std::uint64_t begin, std::uint64_t end, std::size_t chunk) {
      OddRChunkResult local;
      std::vector<std::uint64_t> digit(t);
      std::vector<std::uint64_t> elems;
      for (std::uint64_t index = begin; index < end; ++index) {
        std::uint64_t rest = index;
        bool any = false;
        std::uint64_t sum = 0;
        for (std::uint64_t i = 0; i < t; ++i) {
          digit[i] = rest % radix;
          rest /= radix;
          if (digit[i] == 0) continue;
          any = true;
          if (digit[i] >= 2) {
            const std::uint64_t x = digit[i] - 2;
            sum = (sum + basis.leaders[i] % q * (x % q)) % q;
          }
          // pairs contribute 0 to the congruence
        }
        if (!any || sum != 0) continue;
        ++local.configurations;
        elems.clear();
        for (std::uint64_t i = 0; i < t; ++i) {
          if (digit[i] == 0) continue;
          if (digit[i] == 1)
            elems.insert(elems.end(), spans[i].begin(), spans[i].end());
          else
            append_signed_block(elems, basis.leaders[i], digit[i] - 2, r, q);
        }
        std::sort(elems.begin(), elems.end());
        local.sets.push_back(elems);
      }
      results[chunk] = std::move(local);
    });
    for (const auto& res : results) {
      out.configurations += res.configurations;
      for (const auto& s : res.sets) out.distinct_sets.push_back(s);
    }
  } else {
    // Even r: every sign tuple of a block materializes the same residue set,
    // so configurations are counted arithmetically per leader subset.
    const BigInt space = ipow(pow2(r / 2) + 1, t) - 1;
    if (space > budget) {
      std::uint64_t covered = 0;
      BigInt partial = 1;
      while (covered < t && partial <= budget) {
        partial *= pow2(r / 2) + 1;
        ++covered;
      }
      throw ResourceError("construction space " + space.str() + " exceeds budget " +
                          std::to_string(budget) + " at leader " + std::to_string(covered) +
                          " of " + std::to_string(t));
    }
    std::vector<std::vector<std::uint64_t>> spans(t);
    for (std::uint64_t i = 0; i < t; ++i) spans[i] = pm2_orbit(basis.leaders[i], ctx);
    const BigInt per_leader = pow2(r / 2);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << t); ++mask) {
      const int z = std::popcount(mask);
      out.configurations += ipow(per_leader, z);
      std::vector<std::uint64_t> elems;
      for (std::uint64_t i = 0; i < t; ++i)
        if (mask >> i & 1) elems.insert(elems.end(), spans[i].begin(), spans[i].end());
      std::sort(elems.begin(), elems.end());
      out.distinct_sets.push_back(std::move(elems));
    }
  }

  std::sort(out.distinct_sets.begin(), out.distinct_sets.end());
  out.distinct_sets.erase(std::unique(out.distinct_sets.begin(), out.distinct_sets.end()),
                          out.distinct_sets.end());

  for (const auto& s : out.distinct_sets) {
    auto profile = subset_sum_distribution(ResidueMultiset::from_elements(q, s));
    if (!is_equidistributed(profile))
      throw std::logic_error("enumerate_by_construction: emitted set is not equidistributed");
  }
  return out;
}

CensusResult brute_force_census(const RingContext& ctx, std::uint64_t budget, int jobs,
                                bool prune) {
  const std::uint64_t n = ctx.n;
  const std::uint64_t phi = ctx.phi;
  if (phi >= 63 || (std::uint64_t{1} << phi) > budget)
    throw ResourceError("census over 2^" + std::to_string(phi) + " subsets exceeds budget " +
                        std::to_string(budget));
  const std::uint64_t total = (std::uint64_t{1} << phi) - 1;  // non-empty masks

  std::vector<bool> size_ok(phi + 1, true);
  if (prune)
    for (std::uint64_t s = 0; s <= phi; ++s) size_ok[s] = mod_pow(2, s, n) == 1;

  const std::uint64_t chunk_count = std::max<int>(jobs, 1);
  std::vector<std::vector<std::uint64_t>> found(
      std::min<std::uint64_t>(chunk_count, total ? total : 1));
  parallel_chunks(total, static_cast<int>(chunk_count),
                  [&](std::uint64_t begin, std::uint64_t end, std::size_t chunk) {
    std::vector<std::uint64_t> masks;
    std::vector<std::uint64_t> elems;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t mask = i + 1;
      const int size = std::popcount(mask);
      if (!size_ok[static_cast<std::uint64_t>(size)]) continue;
      elems.clear();
      std::uint64_t sum = 0;
      for (std::uint64_t b = 0; b < phi; ++b)
        if (mask >> b & 1) {
          elems.push_back(ctx.units[b]);
          sum += ctx.units[b];
        }
      if (prune && sum % n != 0) continue;  // equidistribution forces a zero sum
      auto profile = subset_sum_distribution(ResidueMultiset::from_elements(n, elems));
      if (is_equidistributed(profile)) masks.push_back(mask);
    }
    found[chunk] = std::move(masks);
  });

  CensusResult out;
  for (const auto& masks : found)
    for (std::uint64_t mask : masks) {
      std::vector<std::uint64_t> elems;
      for (std::uint64_t b = 0; b < phi; ++b)
        if (mask >> b & 1) elems.push_back(ctx.units[b]);
      out.sets.push_back(std::move(elems));
    }
  return out;
}

CountReport reconcile_counts(const RingContext& ctx, std::uint64_t budget, int jobs) {
  if (!ctx.is_odd || !ctx.is_prime_power)
    throw DomainError("reconcile_counts: modulus " + std::to_string(ctx.n) +
                      " must be an odd prime power");
  CountReport rep;
  rep.modulus = ctx.n;
  rep.r = ctx.r();
  rep.phi = ctx.phi;
  rep.parity = rep.r % 2 == 1 ? ParityCase::odd_r : ParityCase::even_r;
  rep.formula_value = equidistributed_count_formula(ctx);

  ConstructionEnumeration cons = enumerate_by_construction(ctx, budget, jobs);
  rep.configuration_count = cons.configurations;
  rep.distinct_set_count = cons.distinct_sets.size();

  try {
    CensusResult census = brute_force_census(ctx, budget, jobs);
    rep.brute_force_count = BigInt(census.sets.size());
  } catch (const ResourceError&) {
    rep.brute_force_note = "skipped: budget";
  }

  rep.flags.formula_vs_config = rep.formula_value == rep.configuration_count;
  rep.flags.formula_vs_sets = rep.formula_value == rep.distinct_set_count;
  if (rep.brute_force_count)
    rep.flags.sets_vs_bruteforce = *rep.brute_force_count == rep.distinct_set_count;
  return rep;
}

}  // namespace eqdist
