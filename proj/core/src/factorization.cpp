#include "eqdist/factorization.hpp"

#include "eqdist/errors.hpp"

namespace eqdist {

std::uint64_t Factorization::value() const {
  std::uint64_t v = 1;
  for (const auto& pp : factors)
    for (unsigned e = 0; e < pp.exponent; ++e) v *= pp.prime;
  return v;
}

Factorization factorize(std::uint64_t m) {
  if (m < 2) throw DomainError("factorize: argument must be >= 2, got " + std::to_string(m));
  Factorization f;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) f.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (std::uint64_t p = 5; p * p <= m; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (m > 1) f.factors.push_back({m, 1});
  return f;
}

std::uint64_t euler_phi(std::uint64_t m) {
  if (m == 1) return 1;
  std::uint64_t phi = 1;
  for (const auto& pp : factorize(m).factors) {
    std::uint64_t q = pp.prime;
    for (unsigned e = 1; e < pp.exponent; ++e) q *= pp.prime;
    phi *= q - q / pp.prime;
  }
  return phi;
}

}  // namespace eqdist
