#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "doracle/logk_oracle.hpp"
#include "test_util.hpp"

using namespace doracle;
using namespace doracle::testutil;

namespace {

DeltaTable synthetic_delta(std::uint32_t n, std::uint32_t k, std::uint64_t seed) {
    DeltaTable t;
    t.n = n;
    t.k = k;
    t.d_.resize(std::size_t(n) * (k - 2));
    Rng rng(seed);
    for (auto& x : t.d_) x = rng.uniform(0.0, 50.0);
    return t;
}

// Reference for every stored/combined argmax: scan the even indices.
std::uint32_t linear_argmax(const DeltaTable& d, Vertex u, std::uint32_t lo, std::uint32_t hi) {
    std::uint32_t best = lo;
    for (std::uint32_t j = lo; j <= hi; j += 2)
        if (d.delta(u, j) > d.delta(u, best)) best = j;
    return best;
}

std::uint32_t plan_depth(const SearchPlan& p, std::int32_t node) {
    const PlanNode& nd = p.nodes[node];
    if (nd.leaf()) return 0;
    return 1 + std::max(plan_depth(p, nd.on_fail), plan_depth(p, nd.on_held));
}

bool is_terminal(const Instance& inst, Vertex u, Vertex v, std::int32_t idx) {
    std::uint32_t k = inst.k;
    if (idx == std::int32_t(k) - 1) return true;
    if (idx % 2 != 0 || idx >= std::int32_t(k) - 1) return false;
    return inst.bunches.contains(v, inst.pivots.pivot_of(u, std::uint32_t(idx))) ||
           inst.bunches.contains(u, inst.pivots.pivot_of(v, std::uint32_t(idx) + 1));
}

void audit_descent(const Instance& inst, Vertex u, Vertex v,
                   const std::vector<PlanVisit>& visits, const DeltaTable& delta) {
    double d = inst.exact(u, v);
    for (const PlanVisit& visit : visits) {
        CHECK(visit.i1 % 2 == 0);
        CHECK(inst.pivots.pivot_dist(u, std::uint32_t(visit.i1)) <=
              double(visit.i1) * d * (1 + kRelTol) + 1e-12);
        CHECK(is_terminal(inst, u, v, visit.i2));
        if (visit.took_fail && visit.j >= 0)
            CHECK(delta.delta(u, std::uint32_t(visit.j)) <= 2.0 * d * (1 + kRelTol) + 1e-12);
    }
}

}  // namespace

TEST_CASE("delta table") {
    SUBCASE("direct subtraction on a hand pivot table") {
        PivotTable p;
        p.n = 1;
        p.k = 3;
        p.pivot = {0, 0, 0};
        p.dist = {0.0, 5.0, 9.0};
        DeltaTable t = build_delta_table(p);
        CHECK(t.delta(0, 0) == 9.0);
    }
    SUBCASE("constant pivot distances give zero growth") {
        PivotTable p;
        p.n = 2;
        p.k = 4;
        p.pivot.assign(8, 0);
        p.dist = {0, 0, 0, 0, 0, 0, 0, 0};
        DeltaTable t = build_delta_table(p);
        for (Vertex u = 0; u < 2; ++u)
            for (std::uint32_t i = 0; i < 2; ++i) CHECK(t.delta(u, i) == 0.0);
    }
    SUBCASE("k < 3 is rejected") {
        PivotTable p;
        p.n = 1;
        p.k = 2;
        p.pivot = {0, 0};
        p.dist = {0, 1};
        try {
            build_delta_table(p);
            FAIL("expected NotApplicable");
        } catch (const Error& e) {
            CHECK(e.code == Error::Code::NotApplicable);
        }
    }
    SUBCASE("growth is nonnegative on real instances") {
        Instance inst = make_instance(generate_gnm(64, 256, 1.0, 100.0, 77), 6, 3);
        DeltaTable t = build_delta_table(inst.pivots);
        for (Vertex u = 0; u < inst.g.n; ++u)
            for (std::uint32_t i = 0; i + 2 < inst.k; ++i) CHECK(t.delta(u, i) >= 0.0);
    }
}

TEST_CASE("canonical argmax tree") {
    DeltaTable delta = synthetic_delta(24, 32, 2024);
    CanonicalArgmaxTree tree(delta);

    SUBCASE("structure: leaves are index pairs, ranges tile") {
        for (const auto& nd : tree.nodes()) {
            CHECK(nd.lo % 2 == 0);
            CHECK(nd.hi % 2 == 0);
            if (nd.leaf()) {
                CHECK(nd.hi - nd.lo == 2);
            } else {
                CHECK(tree.nodes()[nd.left].lo == nd.lo);
                CHECK(tree.nodes()[nd.left].hi == tree.nodes()[nd.right].lo);
                CHECK(tree.nodes()[nd.right].hi == nd.hi);
            }
        }
        const auto& root = tree.nodes()[tree.root()];
        CHECK(root.lo == 0);
        CHECK(root.hi == 30);  // largest even index of 0..31
    }
    SUBCASE("stored argmaxes equal linear scans") {
        for (Vertex u = 0; u < 24; ++u)
            for (std::size_t t = 0; t < tree.nodes().size(); ++t) {
                const auto& nd = tree.nodes()[t];
                CHECK(tree.stored_argmax(u, t) ==
                      std::int32_t(linear_argmax(delta, u, std::uint32_t(nd.lo),
                                                 std::uint32_t(nd.hi) - 2)));
            }
    }
    SUBCASE("range_argmax equals linear scan on random ranges") {
        Rng rng(55);
        for (int t = 0; t < 10000; ++t) {
            Vertex u = Vertex(rng.below(24));
            std::uint32_t lo = 2 * std::uint32_t(rng.below(15));
            std::uint32_t hi = lo + 2 * (1 + std::uint32_t(rng.below(15 - lo / 2)));
            if (hi > 30) hi = 30;
            CHECK(tree.range_argmax(u, lo, hi) == linear_argmax(delta, u, lo, hi - 2));
        }
    }
    SUBCASE("singleton range returns its only candidate") {
        for (std::uint32_t lo = 0; lo <= 28; lo += 2)
            CHECK(tree.range_argmax(0, lo, lo + 2) == lo);
    }
    SUBCASE("all-equal growth resolves ties to the left") {
        DeltaTable flat;
        flat.n = 1;
        flat.k = 32;
        flat.d_.assign(30, 3.0);
        CanonicalArgmaxTree ft(flat);
        CHECK(ft.range_argmax(0, 0, 30) == 0);
        CHECK(ft.range_argmax(0, 4, 20) == 4);
        for (std::size_t t = 0; t < ft.nodes().size(); ++t)
            CHECK(ft.stored_argmax(0, t) == ft.nodes()[t].lo);
    }
}

TEST_CASE("search plans") {
    SUBCASE("k = 16 root follows the split rule") {
        DeltaTable delta = synthetic_delta(8, 16, 99);
        CanonicalArgmaxTree tree(delta);
        for (Vertex u = 0; u < 8; ++u) {
            SearchPlan plan = build_search_plan(u, delta, tree, 16);
            REQUIRE(!plan.trivial);
            const PlanNode& root = plan.nodes[0];
            CHECK(root.i1 == 0);
            CHECK(root.i2 == 15);
            CHECK(root.i == 8);
            CHECK(root.j >= 0);
            CHECK(root.j <= 6);
            CHECK(root.j % 2 == 0);
            CHECK(root.j == std::int32_t(linear_argmax(delta, u, 0, 6)));
        }
    }
    SUBCASE("zero growth sends every argmax to the range start") {
        DeltaTable flat;
        flat.n = 1;
        flat.k = 16;
        flat.d_.assign(14, 0.0);
        CanonicalArgmaxTree tree(flat);
        SearchPlan plan = build_search_plan(0, flat, tree, 16);
        for (const auto& nd : plan.nodes)
            if (!nd.leaf()) CHECK(nd.j == nd.i1);
    }
    SUBCASE("k < 16 plans are trivial") {
        DeltaTable delta = synthetic_delta(4, 8, 1);
        CanonicalArgmaxTree tree(delta);
        CHECK(build_search_plan(0, delta, tree, 8).trivial);
    }
    SUBCASE("structural invariants and argmax oracle at several k") {
        for (std::uint32_t k : {16u, 32u, 64u}) {
            DeltaTable delta = synthetic_delta(16, k, 7 * k);
            CanonicalArgmaxTree tree(delta);
            std::uint32_t leaf_len = std::uint32_t(std::ceil(std::log2(double(k))));
            for (Vertex u = 0; u < 16; ++u) {
                SearchPlan plan = build_search_plan(u, delta, tree, k);
                CHECK(plan.nodes[0].i1 == 0);
                CHECK(plan.nodes[0].i2 == std::int32_t(k) - 1);
                for (const auto& nd : plan.nodes) {
                    CHECK(nd.i1 % 2 == 0);
                    if (nd.leaf()) {
                        CHECK(nd.i2 - nd.i1 <= std::int32_t(leaf_len));
                        continue;
                    }
                    CHECK(nd.i % 2 == 0);
                    CHECK(nd.j % 2 == 0);
                    CHECK(nd.i1 + 2 <= nd.i);
                    CHECK(nd.i <= nd.i2 - 2);
                    CHECK(nd.i1 <= nd.j);
                    CHECK(nd.j <= nd.i - 2);
                    CHECK(nd.j == std::int32_t(linear_argmax(delta, u, std::uint32_t(nd.i1),
                                                             std::uint32_t(nd.i) - 2)));
                    CHECK(plan.nodes[nd.on_fail].i1 == nd.i);
                    CHECK(plan.nodes[nd.on_fail].i2 == nd.i2);
                    CHECK(plan.nodes[nd.on_held].i1 == nd.i1);
                    CHECK(plan.nodes[nd.on_held].i2 == nd.j);
                }
                CHECK(plan.nodes.size() <= 2 * k / leaf_len + 8);
                CHECK(plan_depth(plan, 0) <= std::uint32_t(std::log2(double(k))) + 2);
            }
        }
    }
}

TEST_CASE("bdist_k") {
    SUBCASE("small k falls back to the classic walk exactly") {
        Instance inst = make_instance(generate_gnm(96, 512, 1.0, 100.0, 12), 5, 4);
        LogkOracle o = build_logk_oracle(inst.g, 5, 4);
        for (auto [u, v] : random_pairs(inst.g.n, 2000, 3))
            CHECK(logk_query(o, u, v) ==
                  dist_k(u, v, 0, o.tz.bunches, o.tz.pivots));
    }
    SUBCASE("identity queries return zero") {
        Graph g = generate_gnm(128, 1024, 1.0, 100.0, 9);
        LogkOracle o = build_logk_oracle(g, 16, 5);
        for (Vertex u = 0; u < g.n; ++u) CHECK(logk_query(o, u, u) == 0.0);
    }
    SUBCASE("stretch, feasibility audit, and probe ceiling at k = 16 and 32") {
        for (std::uint32_t k : {16u, 32u}) {
            Graph g = generate_gnm(128, 1024, 1.0, 100.0, 100 + k);
            Instance inst = make_instance(g, k, k);
            // Rebuild the logk parts on the same sampled structures.
            LogkOracle o;
            o.tz = TzOracle{k, k, inst.levels, inst.pivots, inst.bunches};
            o.delta = build_delta_table(inst.pivots);
            o.tree = CanonicalArgmaxTree(o.delta);
            o.plans = build_search_plans(o.delta, o.tree, k);

            int probe_ceiling = 6 * int(std::ceil(std::log2(double(k)))) + 16;
            double ceiling = 2.0 * k - 1.0;
            for (auto [u, v] : random_pairs(inst.g.n, 4000, k)) {
                QueryStats stats;
                std::vector<PlanVisit> visits;
                double est = bdist_k(u, v, o.plans.plans[u], o.tz.bunches, o.tz.pivots, &stats,
                                     &visits);
                CHECK(stretch_ok(est, inst.exact(u, v), ceiling));
                CHECK(stats.probes <= probe_ceiling);
                audit_descent(inst, u, v, visits, o.delta);
            }
        }
    }
}
