#pragma once

#include <cstdint>
#include <random>

namespace delopt {

using Rng = std::mt19937_64;

// Deterministic generator for (seed, stream). Separate streams keep the loss
// sequence independent of how many random numbers a learner consumes.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace delopt
