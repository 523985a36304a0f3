#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace socio::rng {

// All randomized code in the library draws through these helpers instead of
// <random> distributions, whose output sequences differ between standard
// library implementations. mt19937_64 itself is pinned by the standard, so
// seeded results are identical on every platform.

using engine = std::mt19937_64;

inline std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    return mix(a ^ mix(b));
}

// Unbiased integer in [0, n). Lemire's multiply-shift with rejection.
inline std::uint64_t below(engine& g, std::uint64_t n) {
    if (n <= 1) return 0;
    while (true) {
        std::uint64_t x = g();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo >= n || lo >= (0 - n) % n) return static_cast<std::uint64_t>(m >> 64);
    }
}

// Uniform double strictly inside (0, 1).
inline double unit(engine& g) {
    return (static_cast<double>(g() >> 11) + 0.5) * 0x1p-53;
}

// Standard normal deviate via Box-Muller. Two draws per call, no cached state.
inline double gauss(engine& g) {
    double u1 = unit(g);
    double u2 = unit(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

} // namespace socio::rng
