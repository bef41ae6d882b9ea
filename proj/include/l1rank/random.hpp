#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace l1rank {

// Every random decision is drawn from a named sub-stream of the user seed,
// keyed by the stage tag and task indices, so results do not depend on how
// tasks are scheduled across threads.
std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                          std::initializer_list<std::uint64_t> indices = {}) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::string_view tag, std::initializer_list<std::uint64_t> indices = {})
      : engine_(derive_seed(seed, tag, indices)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace l1rank
