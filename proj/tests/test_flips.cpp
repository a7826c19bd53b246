#include <catch2/catch_amalgamated.hpp>

#include "mergewidth/flips.hpp"
#include "mergewidth/generators.hpp"

using namespace mw;

namespace {

Bitset set_of(int n, std::initializer_list<int> vs) {
    Bitset b(n);
    for (int v : vs) b.set(v);
    return b;
}

Partition random_partition(int n, int max_parts, Rng& rng) {
    std::vector<int> label(n);
    for (int v = 0; v < n; ++v) label[v] = rng.below(max_parts);
    return Partition::from_labels(n, label);
}

}  // namespace

TEST_CASE("apply_flip") {
    Graph p3 = path_graph(3);
    SECTION("empty spec is identity") {
        CHECK(apply_flip(p3, Partition::whole(3), FlipSpec{}) == p3);
    }
    SECTION("whole-part self flip complements") {
        FlipSpec f;
        f.flipped.emplace_back(0, 0);
        CHECK(apply_flip(p3, Partition::whole(3), f) == p3.complement());
    }
    SECTION("path with P={{a},{b,c}} flipped across") {
        Partition p = Partition::from_parts(3, {{0}, {1, 2}});
        FlipSpec f;
        f.flipped.emplace_back(0, 1);
        Graph out = apply_flip(p3, p, f);
        CHECK(out.adjacent(0, 2));
        CHECK(out.adjacent(1, 2));
        CHECK_FALSE(out.adjacent(0, 1));
        CHECK(out.edge_count() == 2);
    }
    SECTION("involution per spec") {
        Rng rng(13);
        for (int it = 0; it < 30; ++it) {
            Graph g = gnp(9, 0.5, rng.next());
            Partition p = random_partition(9, 4, rng);
            FlipSpec f;
            for (int a = 0; a < p.count(); ++a)
                for (int b = a; b < p.count(); ++b)
                    if (rng.coin()) f.flipped.emplace_back(a, b);
            CHECK(apply_flip(apply_flip(g, p, f), p, f) == g);
        }
    }
    SECTION("bad part id rejected") {
        FlipSpec f;
        f.flipped.emplace_back(0, 7);
        CHECK_THROWS_AS(apply_flip(p3, Partition::whole(3), f), InputError);
    }
}

TEST_CASE("flip_dist") {
    SECTION("singletons make distinct vertices infinitely far") {
        Graph g = complete_graph(4);
        auto res = flip_dist(g, Partition::singletons(4), 0, 2, 4, EvalMode::Exact);
        CHECK(res.dist == kInf);
        CHECK(res.exact);
    }
    SECTION("path a-b-c with one part: max over {G, complement}") {
        Graph p3 = path_graph(3);
        auto res = flip_dist(p3, Partition::whole(3), 0, 2, 3, EvalMode::Exact);
        CHECK(res.dist == 2);
    }
    SECTION("complete graph with one part: complement is edgeless") {
        Graph k5 = complete_graph(5);
        auto res = flip_dist(k5, Partition::whole(5), 1, 3, 5, EvalMode::Exact);
        CHECK(res.dist == kInf);
    }
    SECTION("exact beyond cap throws") {
        Graph g = gnp(9, 0.5, 1);
        RunConfig cfg;
        cfg.flip_exact_cap = 3;
        CHECK_THROWS_AS(
            flip_dist(g, Partition::singletons(9), 0, 1, 3, EvalMode::Exact, cfg),
            BudgetError);
    }
}

TEST_CASE("flip_ball") {
    SECTION("radius zero") {
        Graph g = gnp(6, 0.5, 2);
        Partition p = Partition::from_parts(6, {{0, 1, 2}, {3, 4, 5}});
        CHECK(flip_ball(g, p, 2, 0, EvalMode::Exact) == set_of(6, {2}));
    }
    SECTION("complete graph, one part, r=1 collapses to the vertex") {
        Graph k4 = complete_graph(4);
        CHECK(flip_ball(k4, Partition::whole(4), 1, 1, EvalMode::Exact) == set_of(4, {1}));
    }
    SECTION("refinement monotonicity (exact)") {
        Rng rng(17);
        for (int it = 0; it < 15; ++it) {
            Graph g = gnp(8, 0.5, rng.next());
            Partition q = random_partition(8, 3, rng);
            // refine q by splitting one part
            std::vector<int> label(8);
            for (int v = 0; v < 8; ++v) label[v] = q.part_of(v);
            int split = rng.below(q.count());
            bool first = true;
            q.part(split).for_each([&](int v) {
                if (!first && rng.coin()) label[v] = q.count();
                first = false;
            });
            Partition p = Partition::from_labels(8, label);
            REQUIRE(p.refines(q));
            for (int v = 0; v < 8; ++v) {
                auto bp = flip_ball(g, p, v, 2, EvalMode::Exact);
                auto bq = flip_ball(g, q, v, 2, EvalMode::Exact);
                CHECK(bp.is_subset_of(bq));
            }
        }
    }
    SECTION("sampled ball is a superset of the exact ball; sampled dist a lower bound") {
        Rng rng(23);
        for (int it = 0; it < 10; ++it) {
            Graph g = gnp(9, 0.45, rng.next());
            Partition p = random_partition(9, 4, rng);
            auto exact = flip_balls(g, p, 2, EvalMode::Exact);
            auto sampled = flip_balls(g, p, 2, EvalMode::Sampled);
            REQUIRE(exact.exact);
            REQUIRE_FALSE(sampled.exact);
            for (int v = 0; v < 9; ++v) CHECK(exact.balls[v].is_subset_of(sampled.balls[v]));
            auto de = flip_dist(g, p, 0, 8, 9, EvalMode::Exact);
            auto ds = flip_dist(g, p, 0, 8, 9, EvalMode::Sampled);
            CHECK(ds.dist <= de.dist);
        }
    }
}

TEST_CASE("homogeneous_modulo") {
    Graph p3 = path_graph(3);
    SECTION("singletons always homogeneous") {
        auto res = homogeneous_modulo(p3, Partition::singletons(3), ResolvedSet(3));
        CHECK(res.ok);
        // witness erases all unresolved edges
        Graph w = apply_flip(p3, Partition::singletons(3), res.witness);
        CHECK(w.edge_count() == 0);
    }
    SECTION("path with one part fails without resolutions") {
        auto res = homogeneous_modulo(p3, Partition::whole(3), ResolvedSet(3));
        CHECK_FALSE(res.ok);
        CHECK(res.offending == std::make_pair(0, 0));
    }
    SECTION("resolving the long pair fixes it") {
        ResolvedSet r(3);
        r.add(0, 2);
        auto res = homogeneous_modulo(p3, Partition::whole(3), r);
        CHECK(res.ok);
        Graph w = apply_flip(p3, Partition::whole(3), res.witness);
        for (auto [u, v] : w.edges()) CHECK(r.contains(u, v));
    }
    SECTION("complete graph with one part homogeneous") {
        CHECK(homogeneous_modulo(complete_graph(5), Partition::whole(5), ResolvedSet(5)).ok);
    }
    SECTION("witness edges always land in R (random)") {
        Rng rng(29);
        int checked = 0;
        for (int it = 0; it < 60; ++it) {
            Graph g = gnp(7, 0.5, rng.next());
            Partition p = random_partition(7, 3, rng);
            ResolvedSet r(7);
            for (int u = 0; u < 7; ++u)
                for (int v = u + 1; v < 7; ++v)
                    if (rng.coin()) r.add(u, v);
            auto res = homogeneous_modulo(g, p, r);
            if (!res.ok) continue;
            ++checked;
            Graph w = apply_flip(g, p, res.witness);
            for (auto [u, v] : w.edges()) CHECK(r.contains(u, v));
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("resolved balls and the resolved bound") {
    ResolvedSet r(3);
    r.add(0, 1);
    r.add(1, 2);
    CHECK(resolved_ball(ResolvedSet(3), 0, 5) == set_of(3, {0}));
    CHECK(resolved_ball(r, 0, 1) == set_of(3, {0, 1}));
    CHECK(resolved_ball(r, 0, 2) == set_of(3, {0, 1, 2}));

    // dist_R <= dist_P when P is homogeneous modulo R, i.e. flip balls are
    // contained in resolved balls
    Rng rng(31);
    int checked = 0;
    for (int it = 0; it < 80 && checked < 15; ++it) {
        Graph g = gnp(7, 0.5, rng.next());
        Partition p = atomic_types(g, set_of(7, {0, 1}));
        ResolvedSet r2(7);
        for (int u = 0; u < 7; ++u)
            for (int v = u + 1; v < 7; ++v)
                if (rng.coin()) r2.add(u, v);
        if (!homogeneous_modulo(g, p, r2).ok) continue;
        if (p.count() > 6) continue;
        ++checked;
        for (int v = 0; v < 7; ++v)
            for (int rad = 1; rad <= 3; ++rad)
                CHECK(flip_ball(g, p, v, rad, EvalMode::Exact).is_subset_of(r2.ball(v, rad)));
    }
    CHECK(checked > 0);
}
