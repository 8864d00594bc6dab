#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace eqdist {

/// A multiset of residues mod n. Residues are normalized into [0, n-1] at
/// every entry point; entries are kept sorted by residue with merged
/// multiplicities, so equal multisets compare equal.
class ResidueMultiset {
 public:
  explicit ResidueMultiset(std::uint64_t modulus);
  ResidueMultiset(std::uint64_t modulus, std::initializer_list<std::uint64_t> elements);

  static ResidueMultiset from_elements(std::uint64_t modulus,
                                       std::span<const std::uint64_t> elements);

  void add(std::uint64_t residue, std::uint64_t multiplicity = 1);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const {
    return entries_;
  }

  /// Total cardinality counted with multiplicity.
  std::uint64_t cardinality() const;

  /// Sum of all elements (with multiplicity) reduced mod n.
  std::uint64_t sum_mod() const;

  bool all_units() const;
  bool empty() const { return entries_.empty(); }

  /// Elements repeated per multiplicity, ascending.
  std::vector<std::uint64_t> occurrences() const;

  bool operator==(const ResidueMultiset&) const = default;

 private:
  std::uint64_t modulus_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;  // (residue, multiplicity)
};

}  // namespace eqdist
