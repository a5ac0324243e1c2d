#pragma once

#include <cstdint>

namespace pwlb {

// Counter-based splitmix64. Stateless: value i of stream `seed` is
// mix(seed + i * golden). Reproducible regardless of evaluation order or
// thread count.
struct SplitMix64 {
    std::uint64_t seed;

    explicit SplitMix64(std::uint64_t s) : seed(s) {}

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t at(std::uint64_t counter) const {
        return mix(seed + counter * 0x9E3779B97F4A7C15ULL);
    }

    // Uniform double in [0,1) from the top 53 bits.
    double uniform(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }
};

} // namespace pwlb
