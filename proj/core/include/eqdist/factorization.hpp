#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace eqdist {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  auto operator<=>(const PrimePower&) const = default;
};

/// Prime factorization with primes strictly ascending and exponents >= 1.
struct Factorization {
  std::vector<PrimePower> factors;

  std::uint64_t value() const;  // recomposition
  bool is_prime_power() const { return factors.size() == 1; }
  std::size_t distinct_primes() const { return factors.size(); }

  bool operator==(const Factorization&) const = default;
};

/// Trial-division factorization. Throws DomainError for m < 2.
Factorization factorize(std::uint64_t m);

/// phi(m) from the factorization formula.
std::uint64_t euler_phi(std::uint64_t m);

}  // namespace eqdist
