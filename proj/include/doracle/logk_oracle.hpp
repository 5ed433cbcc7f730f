#pragma once

#include <cstdint>
#include <vector>

#include "doracle/tz_core.hpp"

namespace doracle {

/// Pivot-distance growth per two levels: delta(u, i) =
/// pivot_dist(u, i+2) - pivot_dist(u, i), defined for 0 <= i < k-2.
struct DeltaTable {
    std::uint32_t n = 0;
    std::uint32_t k = 0;

    double delta(Vertex u, std::uint32_t i) const { return d_[std::size_t(u) * (k - 2) + i]; }
    bool empty() const { return d_.empty(); }

    std::vector<double> d_;  // n * (k-2), row-major
};

// Requires k >= 3 (two levels above the base are needed).
DeltaTable build_delta_table(const PivotTable& pivots);

/// Static halving decomposition of the even indices of 0..k-1, shared by all
/// vertices; per vertex and per node the stored index is the even argmax of
/// delta over the node's range excluding its last element (ties -> smallest).
class CanonicalArgmaxTree {
public:
    struct Node {
        std::int32_t lo = 0, hi = 0;  // even index values; argmax domain is [lo, hi-2]
        std::int32_t left = -1, right = -1;
        bool leaf() const { return left < 0; }
    };

    CanonicalArgmaxTree() = default;
    explicit CanonicalArgmaxTree(const DeltaTable& delta);

    // Even argmax of delta(u, .) over even positions in [lo, hi-2], combining
    // the maxima of the canonical nodes covering the range.
    std::uint32_t range_argmax(Vertex u, std::uint32_t lo, std::uint32_t hi) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    std::int32_t root() const { return root_; }
    std::int32_t stored_argmax(Vertex u, std::size_t node) const {
        return arg_[std::size_t(u) * nodes_.size() + node];
    }

private:
    std::int32_t build_range(std::uint32_t lo_pos, std::uint32_t hi_pos);
    void query(std::int32_t node, Vertex u, std::int32_t qlo, std::int32_t qhi,
               std::int32_t& best_j, double& best_val) const;

    std::uint32_t k_ = 0;
    std::vector<std::uint32_t> evens_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
    std::vector<std::int32_t> arg_;  // n * nodes_.size()
    std::vector<double> arg_val_;    // delta value at the stored argmax
};

/// Precomputed binary-search recursion for one vertex. Internal nodes carry
/// the split index `i` and the argmax index `j`; a failed membership test
/// descends to the node starting at `i`, a successful one to the node ending
/// at `j`. Leaves fall back to the classic walk from their first index.
struct PlanNode {
    std::int32_t i1 = 0, i2 = 0;
    std::int32_t i = -1, j = -1;
    std::int32_t on_fail = -1, on_held = -1;
    bool leaf() const { return on_fail < 0; }
};

struct SearchPlan {
    bool trivial = false;  // k < 16: answer via dist_k(u, v, 0)
    std::vector<PlanNode> nodes;  // nodes[0] is the root when non-trivial
};

struct SearchPlanSet {
    std::uint32_t k = 0;
    std::uint32_t leaf_len = 0;  // ceil(log2 k)
    std::vector<SearchPlan> plans;
};

// Leaf threshold is ceil(log2 k); plans are trivial for k < 16.
SearchPlan build_search_plan(Vertex u, const DeltaTable& delta, const CanonicalArgmaxTree& tree,
                             std::uint32_t k);
SearchPlanSet build_search_plans(const DeltaTable& delta, const CanonicalArgmaxTree& tree,
                                 std::uint32_t k);

/// One visited internal node of a plan descent, for audits.
struct PlanVisit {
    std::int32_t i1, i2, i, j;
    bool took_fail;
};

double bdist_k(Vertex u, Vertex v, const SearchPlan& plan, const BunchSet& bunches,
               const PivotTable& pivots, QueryStats* stats = nullptr,
               std::vector<PlanVisit>* visits = nullptr,
               std::vector<DistkStep>* leaf_trace = nullptr);

/// Binary-search engine bundle.
struct LogkOracle {
    TzOracle tz;
    DeltaTable delta;  // empty for k == 2
    CanonicalArgmaxTree tree;
    SearchPlanSet plans;
};

LogkOracle build_logk_oracle(const Graph& g, std::uint32_t k, std::uint64_t seed);
double logk_query(const LogkOracle& o, Vertex u, Vertex v, QueryStats* stats = nullptr,
                  std::vector<PlanVisit>* visits = nullptr);

}  // namespace doracle
