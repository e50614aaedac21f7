#pragma once

#include <cstdint>
#include <random>

namespace crn {

using Rng = std::mt19937_64;

/// Named independent streams derived from one episode seed.
enum class Stream : std::uint32_t {
    Environment = 1,
    Node = 2,
    UpdateCoin = 3,
    Strategy = 4,
    Measurement = 5,
};

/// Deterministic engine for (seed, stream, index); distinct tuples give
/// unrelated sequences.
inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint32_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), index};
    return Rng(seq);
}

inline bool bernoulli(Rng& rng, double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return std::bernoulli_distribution(p)(rng);
}

}  // namespace crn
