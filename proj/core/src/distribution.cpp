#include "eqdist/distribution.hpp"

#include <algorithm>
#include <stdexcept>

#include "eqdist/errors.hpp"

namespace eqdist {

BigInt DistributionProfile::total() const {
  BigInt t = 0;
  for (const BigInt& c : counts) t += c;
  return t;
}

DistributionProfile DistributionProfile::including_empty() const {
  if (includes_empty) return *this;
  DistributionProfile p = *this;
  p.counts[0] += 1;
  p.includes_empty = true;
  return p;
}

DistributionProfile subset_sum_distribution(const ResidueMultiset& a) {
  const std::uint64_t n = a.modulus();
  std::vector<BigInt> c(n);
  c[0] = 1;  // empty sub-multiset
  std::vector<BigInt> next(n);
  for (const auto& [res, mult] : a.entries()) {
    for (std::uint64_t i = 0; i < mult; ++i) {
      for (std::uint64_t m = 0; m < n; ++m) next[(m + res) % n] = c[m];
      for (std::uint64_t m = 0; m < n; ++m) c[m] += next[m];
      std::fill(next.begin(), next.end(), 0);
    }
  }
  c[0] -= 1;  // canonical profiles exclude the empty sum
  return DistributionProfile{n, std::move(c), false};
}

bool is_equidistributed(const DistributionProfile& p) {
  if (p.includes_empty)
    throw DomainError("is_equidistributed: expects the non-empty-sum profile");
  for (const BigInt& c : p.counts)
    if (c != p.counts[0]) return false;
  return true;
}

BigInt uniform_count(std::uint64_t k, std::uint64_t n) {
  BigInt total = pow2(k) - 1;
  if (total % n != 0)
    throw DomainError("uniform_count: " + std::to_string(n) + " does not divide 2^" +
                      std::to_string(k) + " - 1");
  return total / n;
}

NecessaryConditions necessary_conditions(const ResidueMultiset& a) {
  const std::uint64_t n = a.modulus();
  if (n < 3) throw DomainError("necessary_conditions: modulus must be >= 3");
  NecessaryConditions out;
  out.pow2_ok = mod_pow(2, a.cardinality(), n) == 1;
  out.sum_ok = a.sum_mod() == 0;
  return out;
}

bool PolyRemainder::is_one() const {
  if (coeffs.empty() || coeffs[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return false;
  return true;
}

PolyIdentityResult poly_identity_check(const ResidueMultiset& a) {
  const std::uint64_t n = a.modulus();
  if (n < 3) throw DomainError("poly_identity_check: modulus must be >= 3");
  // Work modulo x^n - 1 in an n-slot accumulator, then fold the top slot
  // through x^(n-1) = -(1 + x + ... + x^(n-2)).
  std::vector<BigInt> c(n - 1);
  c[0] = 1;
  std::vector<BigInt> acc(n);
  for (const auto& [res, mult] : a.entries()) {
    for (std::uint64_t i = 0; i < mult; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::uint64_t j = 0; j + 1 < n; ++j) {
        if (c[j] == 0) continue;
        acc[j] += c[j];
        acc[(j + res) % n] += c[j];
      }
      const BigInt top = acc[n - 1];
      for (std::uint64_t j = 0; j + 1 < n; ++j) c[j] = acc[j] - top;
    }
  }
  PolyRemainder rem{n, std::move(c)};
  bool holds = rem.is_one();
  return PolyIdentityResult{std::move(rem), holds};
}

std::vector<std::vector<std::uint64_t>> coset_chain_partition(const RingContext& ctx) {
  if (!ctx.is_odd)
    throw DomainError("coset_chain_partition: modulus " + std::to_string(ctx.n) +
                      " must be odd");
  const std::uint64_t n = ctx.n;
  const std::uint64_t r = ctx.r();
  std::vector<bool> covered(n, false);
  std::vector<std::vector<std::uint64_t>> chains;
  for (std::uint64_t b : ctx.units) {
    if (covered[b]) continue;
    std::vector<std::uint64_t> chain;
    chain.reserve(r);
    std::uint64_t cur = b;
    for (std::uint64_t m = 0; m < r; ++m) {
      chain.push_back(cur);
      covered[cur] = true;
      cur = cur * 2 % n;
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

}  // namespace eqdist
