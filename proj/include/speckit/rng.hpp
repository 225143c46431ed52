#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace speckit {

/// Mix a value into a seed (splitmix64 finalizer). Used to derive
/// independent per-member noise streams from (base seed, indices).
inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL + (value << 1 | 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic standard-normal stream: mt19937_64 bits mapped to (0,1]
/// uniforms, Box-Muller cosine branch. Implementation-defined library
/// distributions are avoided so that a given seed yields the same noise
/// everywhere.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

    double next() {
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace speckit
