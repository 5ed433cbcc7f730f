// Acceptance suite: every hard guarantee the library makes, verified against
// exact distances at the sizes stated below. Prints one line per criterion
// and exits nonzero when any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>

#include "comb_checks.hpp"
#include "doracle/archive.hpp"
#include "doracle/const_oracle.hpp"
#include "test_util.hpp"

using namespace doracle;
using namespace doracle::testutil;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d/9 %s — %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Graph bench_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
    return generate_gnm(n, m, 1.0, 100.0, seed);
}

// ---- 1. classic query stretch ------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t pairs_checked = 0, bad = 0;
    double worst_ratio = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Graph g = bench_graph(256, 2048, seed);
        ExactDistances exact = ExactDistances::build(g);
        for (std::uint32_t k : {2u, 3u, 5u, 8u}) {
            LevelHierarchy levels = sample_levels(g.n, k, seed * 100 + k);
            PivotTable pivots = compute_pivots(g, levels);
            BunchSet bunches = compute_bunches(g, levels, pivots);
            double ceiling = 2.0 * k - 1.0;
            for (auto [u, v] : all_pairs(g.n)) {
                double est = dist_k(u, v, 0, bunches, pivots);
                double d = exact(u, v);
                if (!stretch_ok(est, d, ceiling)) ++bad;
                if (d > 0) worst_ratio = std::max(worst_ratio, est / (ceiling * d));
                ++pairs_checked;
            }
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream detail;
    detail << pairs_checked << " pairs over k in {2,3,5,8} x 5 seeds, worst est/((2k-1)d) = "
           << worst_ratio << ", " << bad << " violations, " << secs << " s";
    report(1, "classic query stretch within 2k-1", bad == 0 && secs < 30.0, detail.str());
}

// ---- 2. binary-search query stretch + feasibility audit ------------------

bool terminal_index(const BunchSet& bunches, const PivotTable& pivots, std::uint32_t k,
                    Vertex u, Vertex v, std::int32_t idx) {
    if (idx == std::int32_t(k) - 1) return true;
    if (idx % 2 != 0 || idx >= std::int32_t(k) - 1) return false;
    return bunches.contains(v, pivots.pivot_of(u, std::uint32_t(idx))) ||
           bunches.contains(u, pivots.pivot_of(v, std::uint32_t(idx) + 1));
}

void criterion2() {
    std::size_t pairs_checked = 0, bad_stretch = 0, bad_audit = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Graph g = bench_graph(256, 2048, seed);
        ExactDistances exact = ExactDistances::build(g);
        for (std::uint32_t k : {16u, 32u}) {
            LogkOracle o = build_logk_oracle(g, k, seed * 100 + k);
            double ceiling = 2.0 * k - 1.0;
            for (auto [u, v] : all_pairs(g.n)) {
                std::vector<PlanVisit> visits;
                double est = logk_query(o, u, v, nullptr, &visits);
                double d = exact(u, v);
                if (!stretch_ok(est, d, ceiling)) ++bad_stretch;
                for (const PlanVisit& visit : visits) {
                    bool ok = visit.i1 % 2 == 0 &&
                              o.tz.pivots.pivot_dist(u, std::uint32_t(visit.i1)) <=
                                  double(visit.i1) * d * (1 + kRelTol) + 1e-12 &&
                              terminal_index(o.tz.bunches, o.tz.pivots, k, u, v, visit.i2);
                    if (visit.took_fail && visit.j >= 0)
                        ok = ok && o.delta.delta(u, std::uint32_t(visit.j)) <=
                                       2.0 * d * (1 + kRelTol) + 1e-12;
                    if (!ok) ++bad_audit;
                }
                ++pairs_checked;
            }
        }
    }
    std::ostringstream detail;
    detail << pairs_checked << " pairs over k in {16,32} x 5 seeds, " << bad_stretch
           << " stretch violations, " << bad_audit << " audit violations";
    report(2, "binary-search stretch + node feasibility audit",
           bad_stretch == 0 && bad_audit == 0, detail.str());
}

// ---- 3. probe count independent of n -------------------------------------

void criterion3() {
    const std::uint32_t k = 32;
    const int ceiling = 6 * int(std::ceil(std::log2(double(k)))) + 16;  // 46
    std::map<std::uint32_t, int> max_probes;
    for (std::uint32_t n : {128u, 256u, 512u}) {
        int worst = 0;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Graph g = bench_graph(n, 8 * n, seed);
            LogkOracle o = build_logk_oracle(g, k, seed);
            for (auto [u, v] : all_pairs(n)) {
                QueryStats stats;
                logk_query(o, u, v, &stats);
                worst = std::max(worst, stats.probes);
            }
        }
        max_probes[n] = worst;
    }
    bool equal = max_probes[128] == max_probes[256] && max_probes[256] == max_probes[512];
    bool capped = max_probes[512] <= ceiling;
    std::ostringstream detail;
    detail << "k=32 max membership probes: n=128 -> " << max_probes[128] << ", n=256 -> "
           << max_probes[256] << ", n=512 -> " << max_probes[512] << " (ceiling " << ceiling
           << ")";
    report(3, "bdist probe count independent of n and <= 46", equal && capped, detail.str());
}

// ---- 4. constant-time oracle stretch + fallback soundness -----------------

void criterion4() {
    std::size_t pairs_checked = 0, bad = 0, fallbacks = 0, bad_fallback = 0;
    for (std::uint32_t k : {4u, 6u, 8u}) {
        for (double eps : {0.5, 1.0}) {
            for (bool inflate : {false, true}) {
                for (std::uint64_t seed = 1; seed <= 2; ++seed) {
                    Graph g = bench_graph(256, 2048, 40 + seed);
                    auto exact =
                        std::make_shared<const ExactDistances>(ExactDistances::build(g));
                    std::shared_ptr<const BlackBoxOracle> bb =
                        std::make_shared<const RoundedExactOracle>(exact);
                    if (inflate) bb = std::make_shared<const InflatedOracle>(bb, 64.0 * k);
                    ConstOracle o = build_const_oracle(g, k, eps, bb, seed * 7 + k);
                    double ceiling = (2.0 + eps) * double(k);
                    for (auto [u, v] : all_pairs(g.n)) {
                        ConstTrace trace;
                        double est = query_const(u, v, o, nullptr, &trace);
                        double d = (*exact)(u, v);
                        if (!stretch_ok(est, d, ceiling)) ++bad;
                        if (trace.exit == ConstTrace::Exit::fallback) {
                            ++fallbacks;
                            bool two_sided =
                                est >= d * (1 - kRelTol) &&
                                est <= (1.0 + eps / 2.0) * double(k) * d * (1 + kRelTol);
                            if (!two_sided) ++bad_fallback;
                        }
                        ++pairs_checked;
                    }
                }
            }
        }
    }
    std::ostringstream detail;
    detail << pairs_checked << " pairs over k in {4,6,8} x eps in {0.5,1} x {rounded,"
           << "inflated:64k} x 2 seeds, " << bad << " stretch violations, " << fallbacks
           << " fallbacks (" << bad_fallback << " outside the two-sided bound)";
    report(4, "constant-time stretch within (2+eps)k incl. no-pointer fallback",
           bad == 0 && fallbacks > 0 && bad_fallback == 0, detail.str());
}

// ---- 5. constant-time operation count independent of n --------------------

void criterion5() {
    bool equal = true;
    std::ostringstream detail;
    for (bool inflate : {false, true}) {
        std::map<std::uint32_t, int> maxima;
        for (std::uint32_t n : {128u, 256u, 512u}) {
            int worst = 0;
            for (std::uint64_t seed = 1; seed <= 5; ++seed) {
                Graph g = bench_graph(n, 8 * n, 60 + seed);
                auto exact = std::make_shared<const ExactDistances>(ExactDistances::build(g));
                std::shared_ptr<const BlackBoxOracle> bb =
                    std::make_shared<const RoundedExactOracle>(exact);
                if (inflate) bb = std::make_shared<const InflatedOracle>(bb, 64.0 * 6);
                ConstOracle o = build_const_oracle(g, 6, 1.0, bb, seed);
                for (auto [u, v] : all_pairs(n)) {
                    QueryStats stats;
                    query_const(u, v, o, &stats);
                    worst = std::max(worst, stats.total());
                }
            }
            maxima[n] = worst;
        }
        equal = equal && maxima[128] == maxima[256] && maxima[256] == maxima[512];
        detail << (inflate ? "inflated:384" : "rounded") << " max probes+steps: n=128 -> "
               << maxima[128] << ", n=256 -> " << maxima[256] << ", n=512 -> " << maxima[512]
               << "; ";
    }
    report(5, "constant-time operation count independent of n (k=6, eps=1)", equal,
           detail.str());
}

// ---- 6. implementation-vs-oracle equivalences -----------------------------

void criterion6() {
    std::size_t mismatches = 0;
    std::ostringstream detail;

    // compute_bunches vs the literal set definition.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        for (std::uint32_t k : {2u, 4u, 6u}) {
            Graph g = bench_graph(128, 1024, 70 + seed);
            ExactDistances exact = ExactDistances::build(g);
            LevelHierarchy levels = sample_levels(g.n, k, seed + k);
            PivotTable pivots = compute_pivots(g, levels);
            BunchSet fast = compute_bunches(g, levels, pivots);
            BunchSet naive = naive_bunches(g, levels, pivots, exact);
            for (Vertex u = 0; u < g.n; ++u) {
                if (fast.map[u].size() != naive.map[u].size()) {
                    ++mismatches;
                    continue;
                }
                for (const auto& [w, d] : naive.map[u])
                    if (!fast.contains(u, w) || !close(fast.dist(u, w), d, 1e-12)) ++mismatches;
            }
        }
    }
    detail << "bunches (30 instances)";

    // range_argmax and stored plan indices vs linear scans.
    {
        DeltaTable delta;
        delta.n = 32;
        delta.k = 32;
        delta.d_.resize(32 * 30);
        Rng rng(123);
        for (auto& x : delta.d_) x = rng.uniform(0.0, 10.0);
        CanonicalArgmaxTree tree(delta);
        auto linear = [&](Vertex u, std::uint32_t lo, std::uint32_t hi) {
            std::uint32_t best = lo;
            for (std::uint32_t j = lo; j <= hi; j += 2)
                if (delta.delta(u, j) > delta.delta(u, best)) best = j;
            return best;
        };
        for (int t = 0; t < 10000; ++t) {
            Vertex u = Vertex(rng.below(32));
            std::uint32_t lo = 2 * std::uint32_t(rng.below(15));
            std::uint32_t hi = std::min<std::uint32_t>(30, lo + 2 * (1 + std::uint32_t(rng.below(15))));
            if (tree.range_argmax(u, lo, hi) != linear(u, lo, hi - 2)) ++mismatches;
        }
        for (Vertex u = 0; u < 32; ++u) {
            SearchPlan plan = build_search_plan(u, delta, tree, 32);
            for (const auto& nd : plan.nodes)
                if (!nd.leaf() &&
                    nd.j != std::int32_t(linear(u, std::uint32_t(nd.i1), std::uint32_t(nd.i) - 2)))
                    ++mismatches;
        }
        PrefixArgmaxTable prefix = build_prefix_argmax(delta);
        for (Vertex u = 0; u < 32; ++u)
            for (std::uint32_t i = 2; i <= 2 * prefix.slots(); i += 2)
                if (prefix.at(u, i) != std::int32_t(linear(u, 0, i - 2))) ++mismatches;
        detail << ", argmax structures (10^4 ranges + plans + prefix tables)";
    }

    // tau_lookup vs linear scan.
    {
        std::vector<double> vals = random_value_set(300, 9);
        Rng rng(10);
        for (int t = 0; t < 10000; ++t) {
            double x = std::pow(10.0, rng.uniform(-3.0, 3.0));
            if (x < vals.front()) continue;
            double best = vals.front();
            for (double v : vals)
                if (v <= x) best = v;
            if (tau_lookup(vals, x) != best) ++mismatches;
        }
        detail << ", tau lookups (10^4 queries)";
    }

    detail << ": " << mismatches << " mismatches";
    report(6, "implementations match their independent oracles", mismatches == 0, detail.str());
}

// ---- 7. comb properties ---------------------------------------------------

void criterion7() {
    std::size_t sets_checked = 0, bad = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::size_t size = 1 + std::size_t(Rng(seed * 977 + 3).below(500));
        std::vector<double> s = random_value_set(size, seed);
        for (double eps_raw : {0.1, 0.5, 1.0}) {
            double eps = std::min(eps_raw, 0.5);  // public 1.0 is clamped
            std::vector<double> comb = comb_epsilon(s, eps);
            if (!comb_covers_uniquely(s, comb, eps)) ++bad;
            if (!comb_spacing_holds(comb, eps)) ++bad;
            if (comb.size() > s.size()) ++bad;
            double alpha = (seed % 2 == 0) ? 1.0 : 2.0;
            EpsComb c = build_eps_comb(s, eps, alpha);
            if (!chain_property_holds(c, 1e-9)) ++bad;
            ++sets_checked;
        }
    }
    std::ostringstream detail;
    detail << sets_checked << " (set, eps) combinations, sizes 1..500 over six decades, " << bad
           << " property violations";
    report(7, "comb cover/spacing/cardinality + head chain property", bad == 0, detail.str());
}

// ---- 8. bunch space scaling ----------------------------------------------

void criterion8() {
    const std::uint32_t n = 1024;
    bool ok = true;
    std::ostringstream detail;
    detail << "mean total bunch size over 20 seeds at n=1024:";
    for (std::uint32_t k = 2; k <= 8; ++k) {
        double total = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            Graph g = bench_graph(n, 4 * n, 80 + seed);
            TzOracle o = build_tz_oracle(g, k, seed * 13 + k);
            total += double(o.bunches.total_size());
        }
        double mean = total / 20.0;
        double budget = 4.0 * double(k) * std::pow(double(n), 1.0 + 1.0 / double(k));
        detail << " k=" << k << ": " << std::size_t(mean) << "/" << std::size_t(budget);
        if (mean > budget) ok = false;
    }
    report(8, "bunch space within 4k * n^(1+1/k)", ok, detail.str());
}

// ---- 9. determinism and persistence ---------------------------------------

void criterion9() {
    bool ok = true;
    std::ostringstream detail;
    Graph g = bench_graph(96, 768, 90);
    for (Engine engine : {Engine::tz, Engine::logk, Engine::constant}) {
        std::uint32_t k = engine == Engine::constant ? 5 : 16;
        double eps = 0.5;
        BlackBoxSpec bb = BlackBoxSpec::parse("inflated:320");
        OracleBundle first = build_bundle(g, engine, k, eps, bb, 1234);
        OracleBundle second = build_bundle(g, engine, k, eps, bb, 1234);
        auto bytes_a = serialize_bundle(first);
        auto bytes_b = serialize_bundle(second);
        if (bytes_a != bytes_b) ok = false;

        std::string path = "/tmp/doracle_acceptance_" + engine_name(engine) + ".oracle";
        write_archive(first, path);
        OracleBundle loaded = read_archive(path);
        std::size_t diffs = 0;
        for (auto [u, v] : all_pairs(g.n)) {
            if (bundle_query(loaded, u, v) != bundle_query(first, u, v)) ++diffs;
            if (bundle_query(loaded, v, u) != bundle_query(first, v, u)) ++diffs;
        }
        if (diffs != 0) ok = false;
        detail << engine_name(engine) << ": rebuild " << (bytes_a == bytes_b ? "identical" : "DIFFERS")
               << ", round-trip diffs " << diffs << "; ";
        std::remove(path.c_str());
    }
    report(9, "byte-identical rebuilds and exact archive round-trips", ok, detail.str());
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%d/9 criteria passed in %.1f s\n", 9 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
