#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "doracle/graph.hpp"

namespace doracle {

/// Counters shared by all query engines. `probes` counts bunch-membership
/// tests, `steps` counts value-list moves in the constant-time engine.
struct QueryStats {
    int probes = 0;
    int steps = 0;
    int total() const { return probes + steps; }
};

/// Nested sample hierarchy A_0 = V down to A_{k-1}; level(v) is the largest
/// index whose sample still contains v.
struct LevelHierarchy {
    std::uint32_t k = 0;
    std::vector<std::uint32_t> level;          // per vertex
    std::vector<std::vector<Vertex>> members;  // members[i] = A_i, ascending ids

    bool in_level(Vertex v, std::uint32_t i) const { return level[v] >= i; }
};

// Each A_i keeps a vertex of A_{i-1} independently with probability n^{-1/k};
// the whole hierarchy is resampled (stream advances) until A_{k-1} != {}.
LevelHierarchy sample_levels(std::uint32_t n, std::uint32_t k, std::uint64_t seed);

// Fixed hierarchy for tests and hand instances; validates nesting.
LevelHierarchy levels_from_assignment(std::vector<std::uint32_t> level, std::uint32_t k);

/// Nearest sampled vertex per level: pivot_of(v, i) in A_i together with its
/// distance. Distances are nondecreasing in the level index.
struct PivotTable {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<Vertex> pivot;  // n*k
    std::vector<double> dist;   // n*k

    Vertex pivot_of(Vertex v, std::uint32_t i) const { return pivot[std::size_t(v) * k + i]; }
    double pivot_dist(Vertex v, std::uint32_t i) const { return dist[std::size_t(v) * k + i]; }

    // Largest even index whose pivot distance is <= budget (budget >= 0).
    std::uint32_t even_index_within(Vertex v, double budget) const;
};

// One multi-source run per level; ties on distance resolved toward the
// smallest pivot id so results are reproducible.
PivotTable compute_pivots(const Graph& g, const LevelHierarchy& levels);

/// Per-vertex bunch: hash map member -> exact distance, plus the sorted,
/// deduplicated distance list used by the interval machinery.
struct BunchSet {
    std::vector<std::unordered_map<Vertex, double>> map;
    std::vector<std::vector<double>> dist_list;  // sorted ascending, distinct

    bool contains(Vertex u, Vertex w) const { return map[u].count(w) != 0; }
    double dist(Vertex u, Vertex w) const { return map[u].at(w); }
    const std::vector<double>& list(Vertex u) const { return dist_list[u]; }
    std::size_t total_size() const;
};

// Cluster construction: one pruned Dijkstra per sampled vertex, inverted
// into bunches.
BunchSet compute_bunches(const Graph& g, const LevelHierarchy& levels, const PivotTable& pivots);

// Literal evaluation of the bunch definition against the exact matrix;
// quadratic test oracle, same size guard as ExactDistances.
BunchSet naive_bunches(const Graph& g, const LevelHierarchy& levels, const PivotTable& pivots,
                       const ExactDistances& exact);

/// One step of the alternating pivot walk, for instrumented traces.
struct DistkStep {
    Vertex endpoint;       // endpoint whose pivot was tried
    std::uint32_t index;   // sample level of that pivot
    Vertex w;              // the pivot itself
    double endpoint_dist;  // d(endpoint, w)
    bool hit;              // w found in the other endpoint's bunch
};

// Classic alternating query. Start index 0 is always safe; other start
// indices are meaningful only on feasible subsequences.
double dist_k(Vertex u, Vertex v, std::uint32_t i, const BunchSet& bunches,
              const PivotTable& pivots, QueryStats* stats = nullptr,
              std::vector<DistkStep>* trace = nullptr);

/// Everything the classic engine needs, built from a graph and a seed.
struct TzOracle {
    std::uint32_t k = 0;
    std::uint64_t seed = 0;
    LevelHierarchy levels;
    PivotTable pivots;
    BunchSet bunches;
};

TzOracle build_tz_oracle(const Graph& g, std::uint32_t k, std::uint64_t seed);

}  // namespace doracle
