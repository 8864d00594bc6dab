#include "eqdist/ring.hpp"

#include <numeric>
#include <stdexcept>

#include "eqdist/errors.hpp"

namespace eqdist {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  // moduli here are desk-scale, products fit in 64 bits
  std::uint64_t acc = 1 % n;
  a %= n;
  while (e > 0) {
    if (e & 1) acc = acc * a % n;
    a = a * a % n;
    e >>= 1;
  }
  return acc;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n < 2) throw DomainError("multiplicative_order: modulus must be >= 2");
  a %= n;
  if (gcd_u64(a, n) != 1)
    throw DomainError("multiplicative_order: " + std::to_string(a) + " is not a unit mod " +
                      std::to_string(n));
  if (n == 2) return 1;
  std::uint64_t phi = euler_phi(n);
  std::uint64_t e = phi;
  for (const auto& pp : factorize(phi).factors) {
    while (e % pp.prime == 0 && mod_pow(a, e / pp.prime, n) == 1) e /= pp.prime;
  }
  return e;
}

std::uint64_t RingContext::r() const {
  if (!order_of_two)
    throw DomainError("order of 2 mod " + std::to_string(n) +
                      " is undefined: the modulus is even");
  return *order_of_two;
}

RingContext build_context(std::uint64_t n) {
  if (n < 3) throw DomainError("build_context: modulus must be >= 3, got " + std::to_string(n));
  RingContext ctx;
  ctx.n = n;
  ctx.is_odd = (n % 2 == 1);
  ctx.factorization = factorize(n);
  ctx.is_prime_power = ctx.factorization.is_prime_power();
  ctx.phi = euler_phi(n);
  ctx.units.reserve(ctx.phi);
  for (std::uint64_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) ctx.units.push_back(a);
  if (ctx.units.size() != ctx.phi)
    throw std::logic_error("unit count disagrees with totient");  // unreachable
  if (ctx.is_odd) ctx.order_of_two = multiplicative_order(2, n);
  return ctx;
}

namespace {

// q must be an odd prime power; shared by the two root predicates.
std::uint64_t checked_prime_power_phi(std::uint64_t m, std::uint64_t q, const char* who) {
  if (q < 3 || q % 2 == 0 || !factorize(q).is_prime_power())
    throw DomainError(std::string(who) + ": modulus " + std::to_string(q) +
                      " is not an odd prime power");
  if (gcd_u64(m % q, q) != 1)
    throw DomainError(std::string(who) + ": " + std::to_string(m) + " is not a unit mod " +
                      std::to_string(q));
  return euler_phi(q);
}

}  // namespace

bool is_primitive_root(std::uint64_t m, std::uint64_t q) {
  std::uint64_t phi = checked_prime_power_phi(m, q, "is_primitive_root");
  return multiplicative_order(m % q, q) == phi;
}

bool is_semi_primitive_root(std::uint64_t m, std::uint64_t q) {
  std::uint64_t phi = checked_prime_power_phi(m, q, "is_semi_primitive_root");
  if (phi % 2 != 0) return false;
  return multiplicative_order(m % q, q) == phi / 2;
}

const char* to_string(RootClause c) {
  switch (c) {
    case RootClause::none: return "none";
    case RootClause::two_prime_both_3mod4: return "two_prime_both_3mod4";
    case RootClause::two_prime_mixed: return "two_prime_mixed";
    case RootClause::three_prime: return "three_prime";
  }
  return "none";
}

namespace {

std::string root_check_line(std::uint64_t m, std::uint64_t q, bool semi, bool ok) {
  return std::to_string(m) + (semi ? " semi-primitive root mod " : " primitive root mod ") +
         std::to_string(q) + (ok ? ": yes" : ": no");
}

}  // namespace

RootConditionReport composite_root_conditions(std::uint64_t q) {
  if (q < 3 || q % 2 == 0)
    throw DomainError("composite_root_conditions: modulus must be odd and >= 3");
  Factorization f = factorize(q);
  if (f.is_prime_power())
    throw DomainError("composite_root_conditions: " + std::to_string(q) +
                      " is a prime power; the prime-power branch applies unconditionally");

  RootConditionReport rep;
  std::vector<std::uint64_t> primes, powers;
  for (const auto& pp : f.factors) {
    primes.push_back(pp.prime);
    std::uint64_t pk = 1;
    for (unsigned e = 0; e < pp.exponent; ++e) pk *= pp.prime;
    powers.push_back(pk);
  }

  if (primes.size() == 2) {
    bool both_3mod4 = primes[0] % 4 == 3 && primes[1] % 4 == 3;
    if (both_3mod4) {
      rep.clause = RootClause::two_prime_both_3mod4;
      bool a = is_semi_primitive_root(primes[0], powers[1]);
      bool b = is_semi_primitive_root(primes[1], powers[0]);
      rep.checks.push_back(root_check_line(primes[0], powers[1], true, a));
      rep.checks.push_back(root_check_line(primes[1], powers[0], true, b));
      rep.applicable = a && b;
    } else {
      rep.clause = RootClause::two_prime_mixed;
      bool a = is_primitive_root(primes[0], powers[1]);
      bool b = is_primitive_root(primes[1], powers[0]);
      rep.checks.push_back(root_check_line(primes[0], powers[1], false, a));
      rep.checks.push_back(root_check_line(primes[1], powers[0], false, b));
      rep.applicable = a && b;
    }
    if (!rep.applicable) rep.clause = RootClause::none;
    return rep;
  }

  if (primes.size() == 3) {
    rep.clause = RootClause::three_prime;
    bool ok = true;
    for (std::uint64_t p : primes)
      if (p % 4 != 3) {
        rep.checks.push_back(std::to_string(p) + " = 1 (mod 4): pattern requires 3 (mod 4)");
        ok = false;
      }
    if (ok) {
      // (p_i - 1)/2 pairwise coprime
      for (int i = 0; i < 3 && ok; ++i)
        for (int j = i + 1; j < 3; ++j) {
          std::uint64_t g = gcd_u64((primes[i] - 1) / 2, (primes[j] - 1) / 2);
          if (g != 1) {
            rep.checks.push_back("gcd((" + std::to_string(primes[i]) + "-1)/2, (" +
                                 std::to_string(primes[j]) + "-1)/2) = " + std::to_string(g) +
                                 " != 1");
            ok = false;
            break;
          }
        }
    }
    if (ok) {
      // cyclic primitive pattern p1->P2, p2->P3, p3->P1,
      // and semi-primitive pattern p1->P3, p2->P1, p3->P2
      static const int prim_target[3] = {1, 2, 0};
      static const int semi_target[3] = {2, 0, 1};
      for (int i = 0; i < 3; ++i) {
        bool a = is_primitive_root(primes[i], powers[prim_target[i]]);
        rep.checks.push_back(root_check_line(primes[i], powers[prim_target[i]], false, a));
        ok = ok && a;
      }
      for (int i = 0; i < 3; ++i) {
        bool a = is_semi_primitive_root(primes[i], powers[semi_target[i]]);
        rep.checks.push_back(root_check_line(primes[i], powers[semi_target[i]], true, a));
        ok = ok && a;
      }
    }
    rep.applicable = ok;
    if (!ok) rep.clause = RootClause::none;
    return rep;
  }

  rep.checks.push_back("modulus has " + std::to_string(primes.size()) +
                       " distinct primes: no clause covers more than three");
  return rep;
}

}  // namespace eqdist
