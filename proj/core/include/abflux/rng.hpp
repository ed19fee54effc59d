#pragma once

#include <cstdint>

namespace abflux {

/// SplitMix64 generator (Steele/Lea/Flood splittable construction, Vigna's
/// fixed-increment variant). One 64-bit word of state, full period, cheap to
/// fork into independent streams by scrambling a counter.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) using the top 53 bits.
    double next_u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Output scrambler alone; maps a counter to a well-mixed word.
    static std::uint64_t scramble(std::uint64_t x) {
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t state_;
};

/// Seed of the independent stream for one trial: a counter-based split of the
/// master seed, so any subset of trials can be generated in any order with
/// bit-identical results.
inline std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return SplitMix64::scramble(master_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL);
}

}  // namespace abflux
