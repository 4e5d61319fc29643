#pragma once

#include <cstdint>

namespace driveqa {

/// Portable 64-bit splitmix generator. Every random draw in the toolkit goes
/// through this class so datasets are bit-reproducible across platforms and
/// reimplementations; do not swap in std::mt19937 or libc rand.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 bits of randomness.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, n). Rejection sampling keeps the draw unbiased
    /// without relying on 128-bit arithmetic.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

/// Derives an independent child seed from (seed, salt). Used to give each
/// scenario / subsystem its own stream while staying reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 mix(seed ^ (0xA0761D6478BD642Full * (salt + 1)));
    mix.next();
    return mix.next();
}

}  // namespace driveqa
