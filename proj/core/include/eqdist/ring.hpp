#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqdist/factorization.hpp"

namespace eqdist {

inline std::uint64_t mod_reduce(std::uint64_t a, std::uint64_t n) { return a % n; }

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Least r >= 1 with a^r = 1 (mod n). Throws DomainError unless gcd(a, n) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

/// Precomputed arithmetic facts about a modulus. Immutable once built;
/// safe to share across threads.
struct RingContext {
  std::uint64_t n = 0;
  std::uint64_t phi = 0;
  std::optional<std::uint64_t> order_of_two;  // engaged only for odd n
  std::vector<std::uint64_t> units;           // sorted ascending
  Factorization factorization;
  bool is_prime_power = false;
  bool is_odd = false;

  /// The order of 2 mod n. Throws DomainError with a precise message when
  /// n is even (the order does not exist there).
  std::uint64_t r() const;

  bool is_unit(std::uint64_t a) const { return gcd_u64(a % n, n) == 1; }
};

RingContext build_context(std::uint64_t n);

/// True iff the order of m mod q equals phi(q). q must be an odd prime power.
bool is_primitive_root(std::uint64_t m, std::uint64_t q);

/// True iff the order of m mod q equals phi(q)/2. Always false when phi(q)
/// is odd. q must be an odd prime power.
bool is_semi_primitive_root(std::uint64_t m, std::uint64_t q);

/// Which root-pattern clause an odd composite q satisfies, if any. These are
/// the arithmetic conditions under which the +-2-block decomposition is
/// guaranteed for composite moduli.
enum class RootClause {
  none,
  two_prime_both_3mod4,  // mutual semi-primitive roots
  two_prime_mixed,       // mutual primitive roots
  three_prime,           // primitive/semi-primitive pattern across three prime powers
};

struct RootConditionReport {
  bool applicable = false;
  RootClause clause = RootClause::none;
  std::vector<std::string> checks;  // one line per condition evaluated
};

/// Evaluates the clauses for q odd with >= 2 distinct prime divisors.
/// Throws DomainError for prime powers (that branch needs no conditions).
RootConditionReport composite_root_conditions(std::uint64_t q);

const char* to_string(RootClause c);

}  // namespace eqdist
