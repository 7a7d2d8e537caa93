#pragma once

// Counter-based / splittable random number generation.
//
// Reproducibility is a contract in this project: every experiment cell owns a
// stream derived from (seed, tags...) so that results are independent of
// thread scheduling and of how many draws other cells consume. The generator
// family is SplitMix64 (Vigna's reference constants); reference outputs are
// frozen in tests/test_rng.cpp.

#include <cmath>
#include <cstdint>

namespace critwin {

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kKeyTweak = 0x632BE59BD9B4E019ULL;

// SplitMix64 output finalizer (murmur-style avalanche).
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stateless key derivation: combine a key with a label to get a new key.
// Used to split per-seed streams into per-cell / per-pair substreams.
inline std::uint64_t key_combine(std::uint64_t key, std::uint64_t label) {
    return mix64(key + kSplitMixGamma * (label + kKeyTweak));
}

inline double u01_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kSplitMixGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1).
    double u01() { return u01_from_bits(next_u64()); }

    // Exp(1); u < 1 so the log argument never vanishes.
    double exponential() { return -std::log1p(-u01()); }

    // Laplace(1) as a difference of two Exp(1) draws (exact in distribution).
    double laplace() { return exponential() - exponential(); }

    // Poisson(mean) by counting unit-rate arrivals; exact, underflow-free,
    // O(mean) draws. Offspring-window masses here are O(beta * window), so
    // large means are rare.
    std::int64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        double acc = 0.0;
        std::int64_t k = -1;
        do {
            acc += exponential();
            ++k;
        } while (acc <= mean);
        return k;
    }

    // Uniform integer in [0, bound) by rejection on the top bits.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::uint64_t state_;
};

// Per-pair uniform keyed by (seed, i, j); the basis of the shared-uniform
// (monotone-coupling) graph generation mode.
inline double pair_u01(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    return u01_from_bits(key_combine(key_combine(seed, i), j));
}

}  // namespace critwin
