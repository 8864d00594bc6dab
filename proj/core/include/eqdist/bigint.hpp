#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace eqdist {

// Every count in this library is exact; cpp_int is the only counter type used.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(std::uint64_t k) {
  BigInt one = 1;
  return one << static_cast<unsigned>(k);
}

inline BigInt ipow(const BigInt& base, std::uint64_t exp) {
  BigInt acc = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

// n choose k, exact.
inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;  // exact at every step: acc is C(n-k+i, i)
  }
  return acc;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace eqdist
