#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eqdist/blocks.hpp"
#include "eqdist/multiset.hpp"
#include "eqdist/ring.hpp"

namespace eqdist {

/// Multiset literal: comma-separated residues with optional ^multiplicity,
/// e.g. "1,2^3,4". Residues are reduced mod n; each reduction appends a
/// notice. Throws ParseError with the offending position on bad syntax.
ResidueMultiset parse_multiset_literal(const std::string& text, std::uint64_t modulus,
                                       std::vector<std::string>* notices = nullptr);

/// Block literal: semicolon-separated "leader:signs" items where signs is a
/// string of '+'/'-' of length exactly r, e.g. "1:+++;3:+--".
std::vector<GeometricBlock> parse_block_spec(const std::string& text, const RingContext& ctx);

std::string format_set(const std::vector<std::uint64_t>& elems);
std::string format_multiset(const ResidueMultiset& a);
std::string format_signs(const std::vector<int>& signs);

}  // namespace eqdist
