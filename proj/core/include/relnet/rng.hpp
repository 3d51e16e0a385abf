#pragma once

#include <cstdint>

namespace relnet {

/// splitmix64: tiny, fast, and cheap to seed, so every Monte Carlo run can
/// own an independent stream derived from (seed, run index).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller (one value per call, no caching).
    double normal();

private:
    std::uint64_t state_;
};

/// Stream seed for run k of a job seeded with `seed`.
inline std::uint64_t run_seed(std::uint64_t seed, std::uint64_t k) { return seed ^ k; }

} // namespace relnet
