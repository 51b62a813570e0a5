#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hotgrid/errors.hpp"

namespace hotgrid {

// Every stochastic computation draws from an mt19937_64 substream derived from
// (seed, role, index). Streams are independent of scheduling, so parallel runs
// reproduce serial runs bit for bit.
enum class RngRole : std::uint64_t {
    GlobalPerm = 1,   // index = permutation replicate
    LocalPerm = 2,    // index = cell_id
    SynthCounts = 3,  // index = cell_id
    PointJitter = 4,  // index = cell_id
    SynthPoi = 5,     // index = poi spec position
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, RngRole role, std::uint64_t index) {
    const std::uint64_t s = splitmix64(splitmix64(seed + static_cast<std::uint64_t>(role)) + index);
    return std::mt19937_64(s);
}

// Unbiased integer in [0, bound). Lemire's multiply-shift with rejection;
// avoids std::uniform_int_distribution whose output is implementation-defined.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (lo < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Smallest k with P(X <= k) >= u for X ~ Poisson(lambda), by forward pmf scan.
// Adequate for the event intensities this project generates; the guard keeps
// the exp(-lambda) seed term away from underflow.
inline std::int64_t poisson_quantile(double lambda, double u) {
    if (!(lambda >= 0.0)) throw ValidationError("poisson_quantile: lambda must be >= 0");
    if (lambda > 700.0) throw ValidationError("poisson_quantile: lambda too large (limit 700)");
    if (lambda == 0.0) return 0;
    double pmf = std::exp(-lambda);
    double cdf = pmf;
    std::int64_t k = 0;
    while (cdf < u && k < 100000) {
        ++k;
        pmf *= lambda / static_cast<double>(k);
        cdf += pmf;
    }
    return k;
}

inline std::int64_t sample_poisson(std::mt19937_64& rng, double lambda) {
    return poisson_quantile(lambda, uniform01(rng));
}

}  // namespace hotgrid
