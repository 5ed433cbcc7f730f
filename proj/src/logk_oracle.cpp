#include "doracle/logk_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace doracle {

DeltaTable build_delta_table(const PivotTable& pivots) {
    if (pivots.k < 3)
        throw Error(Error::Code::NotApplicable, "growth table needs k >= 3");
    DeltaTable t;
    t.n = pivots.n;
    t.k = pivots.k;
    t.d_.resize(std::size_t(t.n) * (t.k - 2));
    for (Vertex u = 0; u < t.n; ++u)
        for (std::uint32_t i = 0; i + 2 < t.k; ++i)
            t.d_[std::size_t(u) * (t.k - 2) + i] =
                pivots.pivot_dist(u, i + 2) - pivots.pivot_dist(u, i);
    return t;
}

CanonicalArgmaxTree::CanonicalArgmaxTree(const DeltaTable& delta) : k_(delta.k) {
    for (std::uint32_t e = 0; e < k_; e += 2) evens_.push_back(e);
    if (evens_.size() < 2) throw Error(Error::Code::NotApplicable, "needs at least two even indices");
    root_ = build_range(0, std::uint32_t(evens_.size()) - 1);

    // Bottom-up per-vertex argmaxes; children were created before parents,
    // so ascending node order is a valid evaluation order.
    arg_.resize(std::size_t(delta.n) * nodes_.size());
    arg_val_.resize(arg_.size());
    for (Vertex u = 0; u < delta.n; ++u) {
        std::int32_t* row = arg_.data() + std::size_t(u) * nodes_.size();
        double* val = arg_val_.data() + std::size_t(u) * nodes_.size();
        for (std::size_t t = 0; t < nodes_.size(); ++t) {
            const Node& nd = nodes_[t];
            if (nd.leaf()) {
                row[t] = nd.lo;
                val[t] = delta.delta(u, std::uint32_t(nd.lo));
            } else {
                bool right_wins = val[nd.right] > val[nd.left];
                row[t] = right_wins ? row[nd.right] : row[nd.left];
                val[t] = right_wins ? val[nd.right] : val[nd.left];
            }
        }
    }
}

std::int32_t CanonicalArgmaxTree::build_range(std::uint32_t lo_pos, std::uint32_t hi_pos) {
    Node nd;
    nd.lo = std::int32_t(evens_[lo_pos]);
    nd.hi = std::int32_t(evens_[hi_pos]);
    if (hi_pos - lo_pos > 1) {
        std::uint32_t mid = (lo_pos + hi_pos) / 2;
        nd.left = build_range(lo_pos, mid);
        nd.right = build_range(mid, hi_pos);
    }
    nodes_.push_back(nd);
    return std::int32_t(nodes_.size()) - 1;
}

void CanonicalArgmaxTree::query(std::int32_t node, Vertex u, std::int32_t qlo, std::int32_t qhi,
                                std::int32_t& best_j, double& best_val) const {
    const Node& nd = nodes_[node];
    std::int32_t dlo = nd.lo, dhi = nd.hi - 2;  // argmax domain of this node
    if (dhi < qlo || dlo > qhi) return;
    if (qlo <= dlo && dhi <= qhi) {
        std::size_t idx = std::size_t(u) * nodes_.size() + std::size_t(node);
        std::int32_t cand = arg_[idx];
        double cval = arg_val_[idx];
        if (best_j < 0 || cval > best_val || (cval == best_val && cand < best_j)) {
            best_j = cand;
            best_val = cval;
        }
        return;
    }
    query(nd.left, u, qlo, qhi, best_j, best_val);
    query(nd.right, u, qlo, qhi, best_j, best_val);
}

std::uint32_t CanonicalArgmaxTree::range_argmax(Vertex u, std::uint32_t lo, std::uint32_t hi) const {
    if ((lo & 1u) || (hi & 1u) || lo + 2 > hi || hi >= k_)
        throw Error(Error::Code::BadInput, "range_argmax needs even lo <= hi-2 within 0..k-1");
    std::int32_t best = -1;
    double best_val = 0.0;
    query(root_, u, std::int32_t(lo), std::int32_t(hi) - 2, best, best_val);
    assert(best >= 0);
    return std::uint32_t(best);
}

namespace {

std::uint32_t leaf_threshold(std::uint32_t k) {
    return std::uint32_t(std::ceil(std::log2(double(k))));
}

// Largest even index at or below the rounded-up midpoint, clamped so both
// children stay nonempty.
std::int32_t middle_even(std::int32_t i1, std::int32_t i2) {
    std::int32_t mid = (i1 + i2 + 1) / 2;
    std::int32_t i = mid - (mid & 1);
    std::int32_t hi = (i2 - 2) - ((i2 - 2) & 1);
    if (i > hi) i = hi;
    if (i < i1 + 2) i = i1 + 2;
    return i;
}

std::int32_t build_plan_rec(Vertex u, std::int32_t i1, std::int32_t i2, std::uint32_t threshold,
                            const CanonicalArgmaxTree& tree, std::vector<PlanNode>& nodes) {
    PlanNode nd;
    nd.i1 = i1;
    nd.i2 = i2;
    if (i2 - i1 <= std::int32_t(threshold)) {
        nodes.push_back(nd);
        return std::int32_t(nodes.size()) - 1;
    }
    nd.i = middle_even(i1, i2);
    nd.j = std::int32_t(tree.range_argmax(u, std::uint32_t(i1), std::uint32_t(nd.i)));
    nd.on_fail = build_plan_rec(u, nd.i, i2, threshold, tree, nodes);
    nd.on_held = build_plan_rec(u, i1, nd.j, threshold, tree, nodes);
    nodes.push_back(nd);
    return std::int32_t(nodes.size()) - 1;
}

}  // namespace

SearchPlan build_search_plan(Vertex u, const DeltaTable& delta, const CanonicalArgmaxTree& tree,
                             std::uint32_t k) {
    (void)delta;
    SearchPlan plan;
    if (k < 16) {
        plan.trivial = true;
        return plan;
    }
    std::vector<PlanNode> nodes;
    std::int32_t root = build_plan_rec(u, 0, std::int32_t(k) - 1, leaf_threshold(k), tree, nodes);
    // Root-first storage keeps descents cache-friendly and index 0 the entry.
    std::vector<PlanNode> out(nodes.size());
    std::vector<std::int32_t> remap(nodes.size());
    for (std::size_t t = 0; t < nodes.size(); ++t)
        remap[nodes.size() - 1 - t] = std::int32_t(t);
    for (std::size_t t = 0; t < nodes.size(); ++t) {
        PlanNode nd = nodes[t];
        if (nd.on_fail >= 0) nd.on_fail = remap[nd.on_fail];
        if (nd.on_held >= 0) nd.on_held = remap[nd.on_held];
        out[remap[t]] = nd;
    }
    (void)root;
    plan.nodes = std::move(out);
    return plan;
}

SearchPlanSet build_search_plans(const DeltaTable& delta, const CanonicalArgmaxTree& tree,
                                 std::uint32_t k) {
    SearchPlanSet set;
    set.k = k;
    set.leaf_len = leaf_threshold(k);
    std::uint32_t n = delta.n;
    set.plans.resize(n);
    if (k < 16) {
        for (auto& p : set.plans) p.trivial = true;
        return set;
    }
    for (Vertex u = 0; u < n; ++u) set.plans[u] = build_search_plan(u, delta, tree, k);
    return set;
}

double bdist_k(Vertex u, Vertex v, const SearchPlan& plan, const BunchSet& bunches,
               const PivotTable& pivots, QueryStats* stats, std::vector<PlanVisit>* visits,
               std::vector<DistkStep>* leaf_trace) {
    if (plan.trivial) return dist_k(u, v, 0, bunches, pivots, stats, leaf_trace);
    std::int32_t cur = 0;
    for (;;) {
        const PlanNode& nd = plan.nodes[cur];
        if (nd.leaf()) return dist_k(u, v, std::uint32_t(nd.i1), bunches, pivots, stats, leaf_trace);
        bool held = false;
        if (stats) ++stats->probes;
        if (bunches.contains(v, pivots.pivot_of(u, std::uint32_t(nd.j)))) {
            held = true;
        } else {
            if (stats) ++stats->probes;
            held = bunches.contains(u, pivots.pivot_of(v, std::uint32_t(nd.j) + 1));
        }
        if (visits) visits->push_back({nd.i1, nd.i2, nd.i, nd.j, !held});
        cur = held ? nd.on_held : nd.on_fail;
    }
}

LogkOracle build_logk_oracle(const Graph& g, std::uint32_t k, std::uint64_t seed) {
    LogkOracle o;
    o.tz = build_tz_oracle(g, k, seed);
    if (k >= 3) {
        o.delta = build_delta_table(o.tz.pivots);
        o.tree = CanonicalArgmaxTree(o.delta);
        o.plans = build_search_plans(o.delta, o.tree, k);
    } else {
        o.plans.k = k;
        o.plans.plans.assign(g.n, SearchPlan{true, {}});
    }
    return o;
}

double logk_query(const LogkOracle& o, Vertex u, Vertex v, QueryStats* stats,
                  std::vector<PlanVisit>* visits) {
    return bdist_k(u, v, o.plans.plans[u], o.tz.bunches, o.tz.pivots, stats, visits, nullptr);
}

}  // namespace doracle
