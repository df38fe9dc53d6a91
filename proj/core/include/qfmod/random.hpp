#pragma once

#include "qfmod/modring.hpp"

#include <cstdint>
#include <random>

namespace qfmod {

/// Seedable stream of uniform integers. Single owner; never share one
/// instance between threads.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_{seed} {}

  RandomSource(const RandomSource&) = delete;
  RandomSource& operator=(const RandomSource&) = delete;
  RandomSource(RandomSource&&) = default;
  RandomSource& operator=(RandomSource&&) = default;

  std::uint64_t next_word() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Uniform integer in [0, n). Requires n >= 1. Rejection sampling over
/// ceil(log2 n) random bits, so the result is exactly uniform.
Integer uniform_below(const Integer& n, RandomSource& rng);
std::uint64_t uniform_below(std::uint64_t n, RandomSource& rng);

}  // namespace qfmod
