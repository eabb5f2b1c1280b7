#pragma once

// Counter-based random numbers (splitmix64). Every draw is a pure function
// of (seed, counter), so initial conditions are reproducible bit-for-bit
// given the seed, independent of evaluation order.

#include <cmath>
#include <cstdint>
#include <utility>

#include "grid.hpp"

namespace mhda {

inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter)
{
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Uniform in (0, 1): top 53 bits plus half an ulp so log() is safe.
inline double unit_double(std::uint64_t bits)
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

struct CounterRng {
    std::uint64_t seed = 0;

    double uniform(std::uint64_t counter) const
    {
        return unit_double(splitmix64_at(seed, counter));
    }

    // Box-Muller pair from counters (2c, 2c+1).
    std::pair<double, double> gaussian_pair(std::uint64_t counter) const
    {
        const double u1 = uniform(2 * counter);
        const double u2 = uniform(2 * counter + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
    }
};

// Stable per-mode counter built from the signed frequencies.
inline std::uint64_t mode_counter(int fx, int fy)
{
    const std::uint64_t ux = static_cast<std::uint32_t>(fx);
    const std::uint64_t uy = static_cast<std::uint32_t>(fy);
    return (ux << 32) | uy;
}

}  // namespace mhda
