#pragma once

#include <cmath>
#include <cstdint>

#include "sedsim/constants.hpp"

namespace sedsim {

// Counter-based Gaussian streams.  A variate is a pure function of
// (seed, stream, index): no generator state, so a mode set can grow or shrink
// without disturbing surviving draws, and any worker count sees the same
// sequence.  Frequency slot j draws from stream j; non-slot consumers use the
// reserved ids below.
struct RngSpec {
    std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kStreamInitialConditions = 0xFFFFFFFF00000001ull;

namespace detail {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline constexpr std::uint64_t mix64(std::uint64_t v) {
    v += 0x9E3779B97F4A7C15ull;
    v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
    v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
    return v ^ (v >> 31);
}

}  // namespace detail

inline constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream,
                                            std::uint64_t index) {
    std::uint64_t h = detail::mix64(seed ^ 0x6A09E667F3BCC908ull);
    h = detail::mix64(h ^ stream);
    h = detail::mix64(h ^ index);
    return h;
}

// Uniform on (0,1), both endpoints excluded.
inline double uniform_variate(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return (static_cast<double>(counter_bits(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal, one variate per index (Box-Muller, cosine branch).
inline double gaussian_variate(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const double u1 = uniform_variate(seed, stream, 2 * index);
    const double u2 = uniform_variate(seed, stream, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace sedsim
