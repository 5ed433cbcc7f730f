#include "doracle/tz_core.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "doracle/rng.hpp"

namespace doracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LevelHierarchy sample_levels(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    if (k < 2) throw Error(Error::Code::BadInput, "hierarchy needs k >= 2");
    if (n < 1) throw Error(Error::Code::BadInput, "hierarchy needs n >= 1");
    const double p = std::pow(double(n), -1.0 / double(k));
    Rng rng(seed);

    LevelHierarchy h;
    h.k = k;
    for (;;) {
        h.level.assign(n, 0);
        std::vector<Vertex> current(n);
        for (Vertex v = 0; v < n; ++v) current[v] = v;
        for (std::uint32_t i = 1; i < k; ++i) {
            std::vector<Vertex> next;
            for (Vertex v : current)
                if (rng.u01() < p) {
                    h.level[v] = i;
                    next.push_back(v);
                }
            current = std::move(next);
        }
        if (!current.empty()) break;  // A_{k-1} nonempty
    }
    h.members.assign(k, {});
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t i = 0; i <= h.level[v]; ++i) h.members[i].push_back(v);
    return h;
}

LevelHierarchy levels_from_assignment(std::vector<std::uint32_t> level, std::uint32_t k) {
    if (k < 2) throw Error(Error::Code::BadInput, "hierarchy needs k >= 2");
    LevelHierarchy h;
    h.k = k;
    h.level = std::move(level);
    h.members.assign(k, {});
    for (Vertex v = 0; v < h.level.size(); ++v) {
        if (h.level[v] >= k) throw Error(Error::Code::BadInput, "level out of range");
        for (std::uint32_t i = 0; i <= h.level[v]; ++i) h.members[i].push_back(v);
    }
    if (h.members[k - 1].empty())
        throw Error(Error::Code::BadInput, "top level must be nonempty");
    return h;
}

std::uint32_t PivotTable::even_index_within(Vertex v, double budget) const {
    const double* row = dist.data() + std::size_t(v) * k;
    // Largest index with row[i] <= budget; row is nondecreasing, row[0] = 0.
    std::uint32_t t = std::uint32_t(std::upper_bound(row, row + k, budget) - row);
    assert(t > 0);
    --t;
    return t - (t & 1u);
}

PivotTable compute_pivots(const Graph& g, const LevelHierarchy& levels) {
    const std::uint32_t n = g.n;
    const std::uint32_t k = levels.k;
    PivotTable t;
    t.n = n;
    t.k = k;
    t.pivot.resize(std::size_t(n) * k);
    t.dist.resize(std::size_t(n) * k);

    // Level 0 samples every vertex, so each vertex is its own pivot.
    for (Vertex v = 0; v < n; ++v) {
        t.pivot[std::size_t(v) * k] = v;
        t.dist[std::size_t(v) * k] = 0.0;
    }

    std::vector<double> dist(n);
    std::vector<Vertex> wit(n);
    for (std::uint32_t i = 1; i < k; ++i) {
        std::fill(dist.begin(), dist.end(), kInf);
        std::fill(wit.begin(), wit.end(), n);
        // Lexicographic (distance, witness) Dijkstra: among equally near
        // sources the smallest pivot id wins deterministically.
        using Item = std::tuple<double, Vertex, Vertex>;  // (dist, witness, vertex)
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
        for (Vertex s : levels.members[i]) {
            dist[s] = 0.0;
            wit[s] = s;
            pq.emplace(0.0, s, s);
        }
        while (!pq.empty()) {
            auto [d, w, u] = pq.top();
            pq.pop();
            if (d > dist[u] || (d == dist[u] && w > wit[u])) continue;
            for (std::uint32_t e = g.offset[u]; e < g.offset[u + 1]; ++e) {
                Vertex v = g.adj[e];
                double nd = d + g.wgt[e];
                if (nd < dist[v] || (nd == dist[v] && w < wit[v])) {
                    dist[v] = nd;
                    wit[v] = w;
                    pq.emplace(nd, w, v);
                }
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            t.pivot[std::size_t(v) * k + i] = wit[v];
            t.dist[std::size_t(v) * k + i] = dist[v];
        }
    }
    return t;
}

namespace {

BunchSet finalize_bunches(std::vector<std::unordered_map<Vertex, double>> maps) {
    BunchSet b;
    b.map = std::move(maps);
    b.dist_list.resize(b.map.size());
    for (std::size_t u = 0; u < b.map.size(); ++u) {
        auto& list = b.dist_list[u];
        list.reserve(b.map[u].size());
        for (const auto& [w, d] : b.map[u]) list.push_back(d);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return b;
}

}  // namespace

std::size_t BunchSet::total_size() const {
    std::size_t s = 0;
    for (const auto& m : map) s += m.size();
    return s;
}

BunchSet compute_bunches(const Graph& g, const LevelHierarchy& levels, const PivotTable& pivots) {
    const std::uint32_t n = g.n;
    const std::uint32_t k = levels.k;
    std::vector<std::unordered_map<Vertex, double>> maps(n);

    // next_dist[v] = d(v, A_{i+1}) for the level currently processed;
    // infinity at the top level.
    std::vector<double> next_dist(n);
    std::vector<double> best(n, kInf);
    std::vector<std::uint64_t> stamp(n, 0);
    std::uint64_t epoch = 0;

    for (std::uint32_t i = 0; i < k; ++i) {
        for (Vertex v = 0; v < n; ++v)
            next_dist[v] = (i + 1 < k) ? pivots.pivot_dist(v, i + 1) : kInf;
        for (Vertex w : levels.members[i]) {
            if (levels.level[w] != i) continue;  // w in A_i \ A_{i+1}
            // Pruned Dijkstra from w: grow only while strictly closer than
            // the target's next-level pivot.
            ++epoch;
            using Item = std::pair<double, Vertex>;
            std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
            if (0.0 < next_dist[w]) {
                best[w] = 0.0;
                stamp[w] = epoch;
                pq.emplace(0.0, w);
            }
            while (!pq.empty()) {
                auto [d, u] = pq.top();
                pq.pop();
                if (stamp[u] != epoch || d > best[u]) continue;
                maps[u][w] = d;
                for (std::uint32_t e = g.offset[u]; e < g.offset[u + 1]; ++e) {
                    Vertex v = g.adj[e];
                    double nd = d + g.wgt[e];
                    if (nd >= next_dist[v]) continue;
                    if (stamp[v] != epoch || nd < best[v]) {
                        stamp[v] = epoch;
                        best[v] = nd;
                        pq.emplace(nd, v);
                    }
                }
            }
        }
    }
    return finalize_bunches(std::move(maps));
}

BunchSet naive_bunches(const Graph& g, const LevelHierarchy& levels, const PivotTable& pivots,
                       const ExactDistances& exact) {
    if (g.n > ExactDistances::kSizeGuard)
        throw Error(Error::Code::SizeGuard, "naive bunches limited to exact-oracle scale");
    const std::uint32_t n = g.n;
    const std::uint32_t k = levels.k;
    std::vector<std::unordered_map<Vertex, double>> maps(n);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w = 0; w < n; ++w) {
            std::uint32_t i = levels.level[w];  // w in A_i \ A_{i+1}
            double bound = (i + 1 < k) ? pivots.pivot_dist(u, i + 1) : kInf;
            if (exact(u, w) < bound) maps[u][w] = exact(u, w);
        }
    }
    return finalize_bunches(std::move(maps));
}

double dist_k(Vertex u, Vertex v, std::uint32_t i, const BunchSet& bunches,
              const PivotTable& pivots, QueryStats* stats, std::vector<DistkStep>* trace) {
    const std::uint32_t k = pivots.k;
    if (i >= k) throw Error(Error::Code::BadInput, "start index out of range");
    std::uint32_t j = i;
    Vertex w = pivots.pivot_of(u, j);
    for (;;) {
        if (stats) ++stats->probes;
        bool hit = bunches.contains(v, w);
        if (trace) trace->push_back({u, j, w, pivots.pivot_dist(u, j), hit});
        if (hit) break;
        ++j;
        assert(j < k && "top-level pivot is always shared");
        std::swap(u, v);
        w = pivots.pivot_of(u, j);
    }
    return pivots.pivot_dist(u, j) + bunches.dist(v, w);
}

TzOracle build_tz_oracle(const Graph& g, std::uint32_t k, std::uint64_t seed) {
    TzOracle o;
    o.k = k;
    o.seed = seed;
    o.levels = sample_levels(g.n, k, seed);
    o.pivots = compute_pivots(g, o.levels);
    o.bunches = compute_bunches(g, o.levels, o.pivots);
    return o;
}

}  // namespace doracle
