#pragma once

#include <cstdint>
#include <random>

namespace bsdom {

// Deterministic RNG for campaigns and generators. mt19937_64 has a
// standardized sequence and the uniform mappings are hand-rolled, so the
// same seed yields the same draws on every platform and toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive bounds.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 gen_;
};

// Stream seed for a sub-task: a splitmix64 hash of (master, index), so
// per-trial streams are independent of trial execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace bsdom
