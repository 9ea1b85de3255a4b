#pragma once

#include <cstdint>
#include <random>

namespace onbuy {

// Identifies one independent random stream. Trials use (base seed, trial
// index); strategies fork purchaser-side streams off the same handle.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngHandle fork(std::uint64_t salt) const;
  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

// Thin wrapper over mt19937_64 with platform-independent conversions
// (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(RngHandle handle);

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace onbuy
