#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "doracle/blackbox.hpp"
#include "doracle/comb.hpp"
#include "doracle/logk_oracle.hpp"
#include "doracle/tz_core.hpp"

namespace doracle {

/// Per-vertex sorted endpoint sets: every gap between consecutive bunch
/// distances is split into four equal subintervals.
struct IntervalSets {
    std::vector<std::vector<double>> s;
    const std::vector<double>& of(Vertex u) const { return s[u]; }
};

IntervalSets build_interval_sets(const BunchSet& bunches);

/// Sparse per-vertex map from comb index to an even pivot index. An entry
/// exists exactly where the comb value is the smallest or largest element
/// mapping (under tau over the vertex's interval endpoints) to its image.
struct PointerIndex {
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> at;

    bool defined(Vertex u, std::uint32_t comb_idx) const { return at[u].count(comb_idx) != 0; }
    std::uint32_t get(Vertex u, std::uint32_t comb_idx) const { return at[u].at(comb_idx); }
    std::size_t total_size() const;
};

/// For each vertex and even index i >= 2, the even argmax of delta over
/// 0..i-2 (ties toward the smaller index).
struct PrefixArgmaxTable {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::vector<std::int32_t> j_;

    std::int32_t at(Vertex u, std::uint32_t even_i) const {
        return j_[std::size_t(u) * slots() + (even_i / 2 - 1)];
    }
    std::uint32_t slots() const { return ((k - 1) - ((k - 1) & 1u)) / 2; }
};

PrefixArgmaxTable build_prefix_argmax(const DeltaTable& delta);

/// Constant-query-time oracle: a black-box estimate is snapped onto the
/// comb value list and walked down with pointer-maintained even indices.
struct ConstOracle {
    std::uint32_t k = 0;
    double eps_public = 0.0;
    double eps_work = 0.0;  // eps_public / 2
    double alpha_bb = 1.0;  // black box stretch / k, floored at 1
    double alpha = 1.0;     // (1 + eps_work) * alpha_bb
    std::uint32_t loop_cap = 0;  // max refinement iterations
    std::uint32_t window = 0;    // pointer-scan budget below the head
    std::uint64_t seed = 0;

    LevelHierarchy levels;
    PivotTable pivots;
    BunchSet bunches;
    DeltaTable delta;
    PrefixArgmaxTable prefix;
    std::shared_ptr<const BlackBoxOracle> bb;
    EpsComb comb;
    IntervalSets intervals;
    PointerIndex pointers;
};

ConstOracle build_const_oracle(const Graph& g, std::uint32_t k, double eps,
                               std::shared_ptr<const BlackBoxOracle> bb, std::uint64_t seed);

// Assemble the query-side structures on top of already-built components
// (used by the archive loader; build_const_oracle delegates here).
ConstOracle assemble_const_oracle(std::uint32_t k, double eps,
                                  std::shared_ptr<const BlackBoxOracle> bb, std::uint64_t seed,
                                  LevelHierarchy levels, PivotTable pivots, BunchSet bunches);

/// Step-by-step record of one refinement query, for instrumented checks.
struct ConstTrace {
    enum class Exit {
        identity,        // u == v
        bb_zero,         // black box reported distance 0
        early,           // initial estimate already tight (no refinement)
        argmax_pivot_u,  // prefix-argmax pivot of u hit
        argmax_pivot_v,  // prefix-argmax successor pivot of v hit
        final_pivot_u,   // final even pivot of u hit
        final_pivot_v,   // final successor pivot of v hit
        fallback,        // no pointer within the scan window
    };
    struct Step {
        std::int64_t idx;    // comb list index after the move
        double d_u;          // comb value there
        std::uint32_t i_u;   // even index after the (possible) pointer update
        bool ptr_defined;    // whether this entry updated the pointer
    };
    Exit exit = Exit::identity;
    bool from_v = false;  // roles swapped: refinement ran for (v, u)
    std::int64_t head_idx = -1;
    std::int64_t ptr_found_idx = -1;  // scan position of the initial pointer
    std::uint32_t iu_initial = 0;
    std::uint32_t iu_prime = 0;
    bool cap_hit = false;
    std::uint32_t iters = 0;
    std::vector<Step> steps;
    double result = 0.0;
};

bool refine_further(Vertex u, Vertex v, std::uint32_t i_u, const ConstOracle& o,
                    QueryStats* stats = nullptr);

// Refine an estimate that is a head of the comb list and whose pointer is
// defined at that head. The general entry point is query_const.
double refine_dist(Vertex u, Vertex v, double head_value, const ConstOracle& o,
                   QueryStats* stats = nullptr, ConstTrace* trace = nullptr);

double query_const(Vertex u, Vertex v, const ConstOracle& o, QueryStats* stats = nullptr,
                   ConstTrace* trace = nullptr);

}  // namespace doracle
