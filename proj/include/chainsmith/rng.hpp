#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace chainsmith {

// splitmix64 finalizer; used as the mixing step of the seed-derivation tree.
std::uint64_t mix64(std::uint64_t x);

// Derives a child seed from (base, tag, index). Every random stream in the
// toolkit is seeded through this function so that a single master seed
// determines the whole pipeline regardless of thread count.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::uint64_t index = 0);

// Deterministic RNG wrapper. std::mt19937_64 is fully specified by the
// standard; the bounded/unit draws are hand-rolled because the standard
// distributions are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound); bound > 0
  std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

  // uniform ±1
  int next_sign() { return (next_u64() & 1u) ? 1 : -1; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace chainsmith
