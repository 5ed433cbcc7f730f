#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "doracle/comb.hpp"
#include "doracle/rng.hpp"

namespace doracle::testutil {

// Exactly one comb element covers each input value from above within a
// (1+eps) factor.
inline bool comb_covers_uniquely(const std::vector<double>& input,
                                 const std::vector<double>& comb, double eps) {
    for (double s : input) {
        auto lo = std::lower_bound(comb.begin(), comb.end(), s);
        auto hi = std::lower_bound(comb.begin(), comb.end(), s * (1.0 + eps));
        if (hi - lo != 1) return false;
    }
    return true;
}

// Consecutive comb elements differ by a factor of at least 1+eps.
inline bool comb_spacing_holds(const std::vector<double>& comb, double eps) {
    for (std::size_t i = 0; i + 1 < comb.size(); ++i)
        if (comb[i] * (1.0 + eps) > comb[i + 1]) return false;
    return true;
}

// Every head is preceded by its full geometric chain of exact divisions.
inline bool chain_property_holds(const EpsComb& c, double rel = 1e-9) {
    for (std::size_t t = 0; t < c.sources.size(); ++t) {
        std::uint32_t h = c.heads[t];
        if (h < c.imax) return false;
        double d = c.sources[t];
        double head = c.values[h];
        if (!(d <= head && head < d * (1.0 + c.eps))) return false;
        double expect = head;
        for (std::uint32_t i = 1; i <= c.imax; ++i) {
            expect /= (1.0 + c.eps);
            double got = c.values[h - i];
            if (std::abs(got - expect) > rel * expect) return false;
        }
    }
    return true;
}

inline std::vector<double> random_value_set(std::size_t size, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> s;
    s.reserve(size);
    // Log-uniform over six decades.
    for (std::size_t i = 0; i < size; ++i) s.push_back(std::pow(10.0, rng.uniform(-3.0, 3.0)));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

}  // namespace doracle::testutil
