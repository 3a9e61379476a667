#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qmlbench {

// Deterministic uniform draws built directly on the mt19937_64 output stream.
// std::uniform_real_distribution is implementation-defined, so experiment
// reproducibility across compilers requires rolling the mapping by hand.
inline double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    // Rejection-free modulo is biased; n here is tiny relative to 2^64 so
    // use Lemire-style multiply-shift which is exact enough and deterministic.
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Standard normal via Box-Muller on the deterministic uniform.
inline double normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
}

// Splittable sub-stream: mixes a parent seed with a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qmlbench
