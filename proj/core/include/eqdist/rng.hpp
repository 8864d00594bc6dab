#pragma once

#include <cstdint>
#include <random>

namespace eqdist {

/// Seeded generator for the property batteries. mt19937_64 output is fully
/// specified by the standard, so a fixed seed reproduces the same task
/// stream on every platform. Tasks are always generated sequentially before
/// any parallel evaluation, keeping results independent of the job count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool flip() { return (engine_() & 1) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace eqdist
