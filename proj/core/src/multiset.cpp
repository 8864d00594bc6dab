#include "eqdist/multiset.hpp"

#include <algorithm>
#include <numeric>

#include "eqdist/errors.hpp"

namespace eqdist {

ResidueMultiset::ResidueMultiset(std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 2)
    throw DomainError("ResidueMultiset: modulus must be >= 2, got " + std::to_string(modulus));
}

ResidueMultiset::ResidueMultiset(std::uint64_t modulus,
                                 std::initializer_list<std::uint64_t> elements)
    : ResidueMultiset(modulus) {
  for (std::uint64_t e : elements) add(e);
}

ResidueMultiset ResidueMultiset::from_elements(std::uint64_t modulus,
                                               std::span<const std::uint64_t> elements) {
  ResidueMultiset a(modulus);
  for (std::uint64_t e : elements) a.add(e);
  return a;
}

void ResidueMultiset::add(std::uint64_t residue, std::uint64_t multiplicity) {
  if (multiplicity == 0)
    throw DomainError("ResidueMultiset::add: multiplicity must be >= 1");
  residue %= modulus_;
  auto it = std::lower_bound(entries_.begin(), entries_.end(),
                             std::make_pair(residue, std::uint64_t{0}));
  if (it != entries_.end() && it->first == residue)
    it->second += multiplicity;
  else
    entries_.insert(it, {residue, multiplicity});
}

std::uint64_t ResidueMultiset::cardinality() const {
  std::uint64_t k = 0;
  for (const auto& [res, mult] : entries_) k += mult;
  return k;
}

std::uint64_t ResidueMultiset::sum_mod() const {
  std::uint64_t s = 0;
  for (const auto& [res, mult] : entries_) s = (s + res % modulus_ * (mult % modulus_)) % modulus_;
  return s;
}

bool ResidueMultiset::all_units() const {
  for (const auto& [res, mult] : entries_)
    if (std::gcd(res, modulus_) != 1) return false;
  return true;
}

std::vector<std::uint64_t> ResidueMultiset::occurrences() const {
  std::vector<std::uint64_t> out;
  out.reserve(cardinality());
  for (const auto& [res, mult] : entries_)
    for (std::uint64_t i = 0; i < mult; ++i) out.push_back(res);
  return out;
}

}  // namespace eqdist
