#include "eqdist/textio.hpp"

#include <cctype>

#include "eqdist/errors.hpp"

namespace eqdist {

namespace {

std::uint64_t parse_number(const std::string& text, std::size_t& pos, const char* what) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw ParseError(std::string("expected ") + what, pos);
  std::uint64_t v = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
    if (v > (UINT64_MAX - digit) / 10) throw ParseError("number too large", pos);
    v = v * 10 + digit;
    ++pos;
  }
  return v;
}

}  // namespace

ResidueMultiset parse_multiset_literal(const std::string& text, std::uint64_t modulus,
                                       std::vector<std::string>* notices) {
  ResidueMultiset a(modulus);
  if (text.empty()) return a;
  std::size_t pos = 0;
  while (true) {
    const std::uint64_t value = parse_number(text, pos, "residue");
    std::uint64_t mult = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      const std::size_t mul_at = pos;
      mult = parse_number(text, pos, "multiplicity");
      if (mult == 0) throw ParseError("multiplicity must be >= 1", mul_at);
    }
    if (value >= modulus && notices)
      notices->push_back("residue " + std::to_string(value) + " reduced to " +
                         std::to_string(value % modulus) + " (mod " + std::to_string(modulus) +
                         ")");
    a.add(value, mult);
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ',' or '^'", pos);
    ++pos;
  }
  return a;
}

std::vector<GeometricBlock> parse_block_spec(const std::string& text, const RingContext& ctx) {
  std::vector<GeometricBlock> blocks;
  if (text.empty()) throw ParseError("expected block spec", 0);
  const std::uint64_t r = ctx.r();
  std::size_t pos = 0;
  while (true) {
    const std::uint64_t leader = parse_number(text, pos, "leader");
    if (pos >= text.size() || text[pos] != ':') throw ParseError("expected ':'", pos);
    ++pos;
    std::vector<int> signs;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      signs.push_back(text[pos] == '+' ? 1 : -1);
      ++pos;
    }
    if (signs.size() != r)
      throw ParseError("expected " + std::to_string(r) + " signs, got " +
                           std::to_string(signs.size()),
                       pos);
    blocks.push_back(build_block(leader, signs, ctx));
    if (pos == text.size()) break;
    if (text[pos] != ';') throw ParseError("expected ';'", pos);
    ++pos;
  }
  return blocks;
}

std::string format_set(const std::vector<std::uint64_t>& elems) {
  std::string out = "{";
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(elems[i]);
  }
  return out + "}";
}

std::string format_multiset(const ResidueMultiset& a) {
  std::string out = "{";
  bool first = true;
  for (const auto& [res, mult] : a.entries()) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(res);
    if (mult > 1) out += "^" + std::to_string(mult);
  }
  return out + "}";
}

std::string format_signs(const std::vector<int>& signs) {
  std::string out;
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

}  // namespace eqdist
