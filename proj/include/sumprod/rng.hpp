#pragma once

#include <cstdint>

namespace sumprod {

// splitmix64 finalizer. All randomness in the project flows through this so
// that a (seed, salt) pair gives the same stream on every platform and run.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable seed derivation for sub-streams (cells, roles, resample attempts).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return mix64(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % n;
    }

    // Uniform double in [-1, 1], 53-bit resolution.
    double signed_unit() {
        const double u = double(next() >> 11) * 0x1p-53;
        return 2.0 * u - 1.0;
    }

private:
    std::uint64_t state_;
};

}  // namespace sumprod
