#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based Gaussian stream: every draw is a pure function of
// (seed, stream, counter), so ensemble members can be advanced by any number
// of workers in any order and still see identical noise.

namespace thermoecon::rng {

inline std::uint64_t splitmix_finalize(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    std::uint64_t z = splitmix_finalize(seed ^ (stream * 0x9E3779B97F4A7C15ULL));
    return splitmix_finalize(z ^ (counter * 0xD1B54A32D192ED03ULL));
}

// Uniform on (0, 1]; never zero, so it is safe under a logarithm.
inline double uniform_open(std::uint64_t w) {
    return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

// Uniform on [0, 1).
inline double uniform_half_open(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch).
inline double gaussian(std::uint64_t seed, std::uint64_t stream,
                       std::uint64_t counter) {
    const std::uint64_t w1 = counter_word(seed, stream, 2 * counter);
    const std::uint64_t w2 = counter_word(seed, stream, 2 * counter + 1);
    const double r = std::sqrt(-2.0 * std::log(uniform_open(w1)));
    return r * std::cos(2.0 * std::numbers::pi * uniform_half_open(w2));
}

}  // namespace thermoecon::rng
