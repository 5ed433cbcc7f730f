#pragma once

#include <cstdint>
#include <random>

namespace doracle {

/// Deterministic RNG wrapper. Avoids std::uniform_*_distribution, whose
/// output is implementation-defined; results must be reproducible from the
/// seed alone.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }

    // Uniform in [0, 1), 53 bits of mantissa.
    double u01() { return double(eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    // Uniform integer in [0, bound). Lemire-style; bias is < 2^-64.
    std::uint64_t below(std::uint64_t bound) {
        return std::uint64_t((static_cast<unsigned __int128>(eng()) * bound) >> 64);
    }
};

}  // namespace doracle
