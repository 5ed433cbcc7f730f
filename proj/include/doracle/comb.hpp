#pragma once

#include <cstdint>
#include <vector>

#include "doracle/graph.hpp"

namespace doracle {

// Working epsilon: positive, capped at 1/2 (the analysis of the comb
// machinery assumes eps <= 1/2; public oracle epsilons are halved upstream).
double clamp_comb_epsilon(double eps);

// Thinning pass over a sorted positive value set: keeps the maximum and then
// repeatedly emits min(next remaining value, last kept / (1+eps)), dropping
// everything at or above the emitted value. Output values are spaced by a
// factor >= 1+eps and (1+eps)-cover the input from above.
std::vector<double> comb_epsilon(const std::vector<double>& sorted_values, double eps);

// Number of refinement predecessors each source value needs:
// ceil(log(2 * alpha * (1+eps)) / log(1+eps)).
std::uint32_t chain_length(double eps, double alpha);

// Union of the geometric chains d/(1+eps)^i, 0 <= i <= chain_length, over
// all source values; sorted, near-duplicates (1e-12 relative) merged.
std::vector<double> expand_chains(const std::vector<double>& sources, double eps, double alpha);

// Largest element of sorted S that is <= x; throws when x < min(S).
double tau_lookup(const std::vector<double>& sorted_values, double x);

/// Refinement value list: the comb of the chain-expanded source set, plus a
/// head index per source value (the unique comb element in [d, (1+eps)d)
/// whose chain_length predecessors are exact (1+eps) divisions of it).
struct EpsComb {
    double eps = 0.0;  // working epsilon, already clamped
    double alpha = 1.0;
    std::uint32_t imax = 0;
    std::vector<double> values;        // ascending
    std::vector<double> sources;       // sorted source distance set
    std::vector<std::uint32_t> heads;  // parallel to sources: index into values

    // Head index for a value produced by the source oracle (exact member).
    std::uint32_t head_of(double source_value) const;
};

EpsComb build_eps_comb(const std::vector<double>& sources, double eps, double alpha);

}  // namespace doracle
