#include "doracle/const_oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace doracle {

IntervalSets build_interval_sets(const BunchSet& bunches) {
    IntervalSets out;
    out.s.resize(bunches.dist_list.size());
    for (std::size_t u = 0; u < bunches.dist_list.size(); ++u) {
        const auto& p = bunches.dist_list[u];
        auto& s = out.s[u];
        if (p.size() <= 1) {
            s = p;
            continue;
        }
        s.reserve(4 * (p.size() - 1) + 1);
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            double a = p[i], b = p[i + 1];
            double q = (b - a) / 4.0;
            s.push_back(a);
            s.push_back(a + q);
            s.push_back(a + 2.0 * q);
            s.push_back(a + 3.0 * q);
        }
        s.push_back(p.back());
        assert(std::is_sorted(s.begin(), s.end()));
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return out;
}

std::size_t PointerIndex::total_size() const {
    std::size_t t = 0;
    for (const auto& m : at) t += m.size();
    return t;
}

PrefixArgmaxTable build_prefix_argmax(const DeltaTable& delta) {
    PrefixArgmaxTable t;
    t.n = delta.n;
    t.k = delta.k;
    const std::uint32_t slots = t.slots();
    t.j_.resize(std::size_t(t.n) * slots);
    for (Vertex u = 0; u < t.n; ++u) {
        std::int32_t best = 0;
        for (std::uint32_t slot = 0; slot < slots; ++slot) {
            // slot s covers even i = 2(s+1); candidates are 0, 2, .., i-2,
            // so each step admits one new candidate: i - 2.
            std::uint32_t cand = 2 * slot;
            if (slot > 0 && delta.delta(u, cand) > delta.delta(u, std::uint32_t(best)))
                best = std::int32_t(cand);
            t.j_[std::size_t(u) * slots + slot] = best;
        }
    }
    return t;
}

namespace {

// Merged value list for the two pointer-marking sweeps. At equal values the
// endpoint entries sort before the comb entry: tau is inclusive on the left.
struct MergedEntry {
    double value;
    std::uint32_t tag;    // 0 = interval endpoint, 1 = comb value
    std::uint32_t owner;  // vertex id, or comb index
};

PointerIndex build_pointer_index(const EpsComb& comb, const IntervalSets& intervals,
                                 const PivotTable& pivots) {
    const std::uint32_t n = std::uint32_t(intervals.s.size());
    PointerIndex idx;
    idx.at.resize(n);
    if (comb.values.empty()) return idx;

    std::vector<MergedEntry> merged;
    std::size_t total = comb.values.size();
    for (const auto& s : intervals.s) total += s.size();
    merged.reserve(total);
    for (std::uint32_t c = 0; c < comb.values.size(); ++c)
        merged.push_back({comb.values[c], 1, c});
    for (Vertex u = 0; u < n; ++u)
        for (double d : intervals.of(u)) merged.push_back({d, 0, u});
    std::sort(merged.begin(), merged.end(), [](const MergedEntry& a, const MergedEntry& b) {
        return a.value != b.value ? a.value < b.value : a.tag < b.tag;
    });

    const double inf = std::numeric_limits<double>::infinity();

    // Decreasing sweep: when an endpoint d of S_u is seen, the most recent
    // comb value in [d, previous endpoint of S_u) is the smallest comb
    // element mapping to d.
    {
        std::vector<double> prev(n, inf);
        bool have_comb = false;
        double comb_val = 0.0;
        std::uint32_t comb_idx = 0;
        for (auto it = merged.rbegin(); it != merged.rend(); ++it) {
            if (it->tag == 1) {
                have_comb = true;
                comb_val = it->value;
                comb_idx = it->owner;
            } else {
                Vertex u = it->owner;
                double d = it->value;
                if (have_comb && d <= comb_val && comb_val < prev[u])
                    idx.at[u][comb_idx] = pivots.even_index_within(u, d);
                prev[u] = d;
            }
        }
    }

    // Increasing sweep: when an endpoint d of S_u is seen, the most recent
    // comb value in [previous endpoint, d) is the largest comb element
    // mapping to that previous endpoint. A final virtual endpoint at
    // infinity marks the topmost comb value for every vertex.
    {
        std::vector<double> prev(n, -1.0);
        std::vector<char> has_prev(n, 0);
        bool have_comb = false;
        double comb_val = 0.0;
        std::uint32_t comb_idx = 0;
        for (const auto& e : merged) {
            if (e.tag == 1) {
                have_comb = true;
                comb_val = e.value;
                comb_idx = e.owner;
            } else {
                Vertex u = e.owner;
                double d = e.value;
                if (have_comb && has_prev[u] && prev[u] <= comb_val && comb_val < d)
                    idx.at[u][comb_idx] = pivots.even_index_within(u, prev[u]);
                prev[u] = d;
                has_prev[u] = 1;
            }
        }
        if (have_comb)
            for (Vertex u = 0; u < n; ++u)
                if (has_prev[u] && prev[u] <= comb_val)
                    idx.at[u][comb_idx] = pivots.even_index_within(u, prev[u]);
    }
    return idx;
}

}  // namespace

ConstOracle assemble_const_oracle(std::uint32_t k, double eps,
                                  std::shared_ptr<const BlackBoxOracle> bb, std::uint64_t seed,
                                  LevelHierarchy levels, PivotTable pivots, BunchSet bunches) {
    if (k < 4)
        throw Error(Error::Code::NotApplicable,
                    "constant-time engine needs k >= 4; use the tz or logk engine");
    if (!(eps > 0.0) || eps > 1.0)
        throw Error(Error::Code::BadInput, "epsilon must be in (0, 1]");

    ConstOracle o;
    o.k = k;
    o.eps_public = eps;
    o.eps_work = clamp_comb_epsilon(eps / 2.0);
    o.seed = seed;
    o.levels = std::move(levels);
    o.pivots = std::move(pivots);
    o.bunches = std::move(bunches);
    o.delta = build_delta_table(o.pivots);
    o.prefix = build_prefix_argmax(o.delta);
    o.bb = std::move(bb);
    o.alpha_bb = black_box_alpha(*o.bb, k);
    o.alpha = (1.0 + o.eps_work) * o.alpha_bb;
    o.comb = build_eps_comb(o.bb->distance_set(), o.eps_work, o.alpha_bb);
    o.loop_cap = o.comb.imax;
    o.window = std::uint32_t(
        std::ceil(std::log(2.0 * o.alpha_bb) / std::log(1.0 + o.eps_work) - 1e-9));
    assert(o.window <= o.loop_cap);
    o.intervals = build_interval_sets(o.bunches);
    o.pointers = build_pointer_index(o.comb, o.intervals, o.pivots);
    return o;
}

ConstOracle build_const_oracle(const Graph& g, std::uint32_t k, double eps,
                               std::shared_ptr<const BlackBoxOracle> bb, std::uint64_t seed) {
    LevelHierarchy levels = sample_levels(g.n, k, seed);
    PivotTable pivots = compute_pivots(g, levels);
    BunchSet bunches = compute_bunches(g, levels, pivots);
    return assemble_const_oracle(k, eps, std::move(bb), seed, std::move(levels),
                                 std::move(pivots), std::move(bunches));
}

bool refine_further(Vertex u, Vertex v, std::uint32_t i_u, const ConstOracle& o,
                    QueryStats* stats) {
    const PivotTable& P = o.pivots;
    const BunchSet& B = o.bunches;
    if (i_u >= 2) {
        std::uint32_t j = std::uint32_t(o.prefix.at(u, i_u));
        if (stats) ++stats->probes;
        if (B.contains(v, P.pivot_of(u, j))) return true;
        if (stats) ++stats->probes;
        if (B.contains(u, P.pivot_of(v, j + 1))) return true;
    }
    if (stats) ++stats->probes;
    if (B.contains(v, P.pivot_of(u, i_u))) return true;
    if (i_u + 1 < o.k) {
        if (stats) ++stats->probes;
        if (B.contains(u, P.pivot_of(v, i_u + 1))) return true;
    }
    return false;
}

namespace {

double refine_dist_from(Vertex u, Vertex v, std::uint32_t head_idx, std::uint32_t iu_init,
                        const ConstOracle& o, QueryStats* stats, ConstTrace* trace) {
    const PivotTable& P = o.pivots;
    const BunchSet& B = o.bunches;
    const std::vector<double>& vals = o.comb.values;

    std::int64_t t = head_idx;
    double d_u = vals[std::size_t(t)];
    std::uint32_t i_u = iu_init;
    std::uint32_t iu_prev = i_u;
    if (trace) {
        trace->head_idx = std::int64_t(head_idx);
        trace->iu_initial = iu_init;
    }

    bool rf = refine_further(u, v, i_u, o, stats);
    if (!rf) {
        if (trace) {
            trace->exit = ConstTrace::Exit::early;
            trace->result = d_u;
        }
        return d_u;
    }

    // Moving one list entry down divides the estimate by exactly 1+eps:
    // every head is followed below by its full geometric chain.
    std::uint32_t iters = 0;
    while (rf && iters < o.loop_cap) {
        --t;
        assert(t >= 0);
        if (stats) ++stats->steps;
        d_u = vals[std::size_t(t)];
        iu_prev = i_u;
        bool def = o.pointers.defined(u, std::uint32_t(t));
        if (def) i_u = o.pointers.get(u, std::uint32_t(t));
        ++iters;
        if (trace) trace->steps.push_back({t, d_u, i_u, def});
        rf = refine_further(u, v, i_u, o, stats);
    }

    std::uint32_t iu_prime = (iters > 0) ? iu_prev : iu_init;
    if (trace) {
        trace->cap_hit = rf;
        trace->iters = iters;
        trace->iu_prime = iu_prime;
    }

    double result;
    ConstTrace::Exit exit = ConstTrace::Exit::final_pivot_v;
    if (iu_prime >= 2) {
        std::uint32_t j = std::uint32_t(o.prefix.at(u, iu_prime));
        if (stats) ++stats->probes;
        Vertex pj = P.pivot_of(u, j);
        if (B.contains(v, pj)) {
            result = P.pivot_dist(u, j) + B.dist(v, pj);
            if (trace) {
                trace->exit = ConstTrace::Exit::argmax_pivot_u;
                trace->result = result;
            }
            return result;
        }
        if (stats) ++stats->probes;
        Vertex pj1 = P.pivot_of(v, j + 1);
        if (B.contains(u, pj1)) {
            result = B.dist(u, pj1) + P.pivot_dist(v, j + 1);
            if (trace) {
                trace->exit = ConstTrace::Exit::argmax_pivot_v;
                trace->result = result;
            }
            return result;
        }
    }
    if (stats) ++stats->probes;
    Vertex pi = P.pivot_of(u, iu_prime);
    if (B.contains(v, pi)) {
        result = P.pivot_dist(u, iu_prime) + B.dist(v, pi);
        exit = ConstTrace::Exit::final_pivot_u;
    } else {
        assert(iu_prime + 1 < o.k);
        if (stats) ++stats->probes;
        Vertex pv = P.pivot_of(v, iu_prime + 1);
        result = B.dist(u, pv) + P.pivot_dist(v, iu_prime + 1);
        exit = ConstTrace::Exit::final_pivot_v;
    }
    if (trace) {
        trace->exit = exit;
        trace->result = result;
    }
    return result;
}

}  // namespace

double refine_dist(Vertex u, Vertex v, double head_value, const ConstOracle& o,
                   QueryStats* stats, ConstTrace* trace) {
    auto it = std::lower_bound(o.comb.values.begin(), o.comb.values.end(), head_value);
    if (it == o.comb.values.end() || *it != head_value)
        throw Error(Error::Code::BadInput, "refine_dist: value is not a comb element");
    std::uint32_t head_idx = std::uint32_t(it - o.comb.values.begin());
    if (!o.pointers.defined(u, head_idx))
        throw Error(Error::Code::BadInput, "refine_dist: pointer undefined at the head");
    if (trace) trace->ptr_found_idx = std::int64_t(head_idx);
    return refine_dist_from(u, v, head_idx, o.pointers.get(u, head_idx), o, stats, trace);
}

double query_const(Vertex u, Vertex v, const ConstOracle& o, QueryStats* stats,
                   ConstTrace* trace) {
    if (u == v) {
        if (trace) trace->exit = ConstTrace::Exit::identity;
        return 0.0;
    }
    double estimate = o.bb->query(u, v);
    if (estimate == 0.0) {
        if (trace) trace->exit = ConstTrace::Exit::bb_zero;
        return 0.0;
    }
    const std::uint32_t head = o.comb.head_of(estimate);
    const std::int64_t lowest = std::int64_t(head) - std::int64_t(o.window);
    assert(lowest >= 0);

    for (std::int64_t t = head; t >= lowest; --t) {
        if (stats && t < std::int64_t(head)) ++stats->steps;
        if (o.pointers.defined(u, std::uint32_t(t))) {
            if (trace) trace->ptr_found_idx = t;
            return refine_dist_from(u, v, head, o.pointers.get(u, std::uint32_t(t)), o, stats,
                                    trace);
        }
        if (o.pointers.defined(v, std::uint32_t(t))) {
            if (trace) {
                trace->ptr_found_idx = t;
                trace->from_v = true;
            }
            return refine_dist_from(v, u, head, o.pointers.get(v, std::uint32_t(t)), o, stats,
                                    trace);
        }
    }
    double result = 2.0 * o.comb.values[std::size_t(lowest)];
    if (trace) {
        trace->exit = ConstTrace::Exit::fallback;
        trace->head_idx = std::int64_t(head);
        trace->result = result;
    }
    return result;
}

}  // namespace doracle
