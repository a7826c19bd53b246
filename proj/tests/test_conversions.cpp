#include <catch2/catch_amalgamated.hpp>

#include "mergewidth/complexity.hpp"
#include "mergewidth/conversions.hpp"
#include "mergewidth/generators.hpp"
#include "mergewidth/width.hpp"

using namespace mw;

namespace {

Bitset set_of(int n, std::initializer_list<int> vs) {
    Bitset b(n);
    for (int v : vs) b.set(v);
    return b;
}

}  // namespace

TEST_CASE("diameter side") {
    CHECK(diameter_side(complete_graph(5)) == std::pair{Side::Graph, 1});
    CHECK(diameter_side(empty_graph(4)) == std::pair{Side::Complement, 1});
    CHECK(diameter_side(Graph(1)) == std::pair{Side::Graph, 0});
    auto [side, d] = diameter_side(path_graph(5));
    CHECK(side == Side::Complement);
    CHECK(d <= 3);
    // dichotomy holds on random graphs
    Rng rng(7);
    for (int it = 0; it < 40; ++it) {
        Graph g = gnp(9, rng.unit(), rng.next());
        auto [s, dd] = diameter_side(g);
        CHECK(dd <= 3);
        CHECK((s == Side::Graph ? g.diameter() : g.complement().diameter()) == dd);
    }
}

TEST_CASE("bipartite flip cases") {
    SECTION("complete bipartite block flips to edgeless via case 1") {
        Graph g(4);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        auto res = bipartite_flip_case(g, set_of(4, {0, 1}), set_of(4, {2, 3}), 0, 2);
        CHECK(res.case_tag == 1);
        CHECK(res.flipped.edge_count() == 0);
    }
    SECTION("two disjoint bicliques hit case 3 and become edgeless") {
        Graph g(8);
        for (int u : {0, 1})
            for (int v : {4, 5}) g.add_edge(u, v);
        for (int u : {2, 3})
            for (int v : {6, 7}) g.add_edge(u, v);
        auto res = bipartite_flip_case(g, set_of(8, {0, 1, 2, 3}), set_of(8, {4, 5, 6, 7}), 0, 4);
        CHECK(res.case_tag == 3);
        CHECK(res.flipped.edge_count() == 0);
    }
    SECTION("dominating plus isolated vertex is case 4") {
        // x+ = 0 adjacent to all of Y, x- = 1 isolated; a third X vertex with
        // a mixed neighbourhood keeps the earlier cases from firing
        Graph g(7);
        for (int v : {3, 4, 5, 6}) g.add_edge(0, v);
        g.add_edge(2, 3);
        auto res = bipartite_flip_case(g, set_of(7, {0, 1, 2}), set_of(7, {3, 4, 5, 6}), 0, 3);
        CHECK(res.case_tag == 4);
    }
    SECTION("output edges stay close in both the block and its complement") {
        Rng rng(17);
        for (int it = 0; it < 60; ++it) {
            int nx = 1 + rng.below(4), ny = 1 + rng.below(4);
            Graph g(nx + ny);
            for (int u = 0; u < nx; ++u)
                for (int v = nx; v < nx + ny; ++v)
                    if (rng.coin()) g.add_edge(u, v);
            Bitset xs(nx + ny), ys(nx + ny);
            for (int u = 0; u < nx; ++u) xs.set(u);
            for (int v = nx; v < nx + ny; ++v) ys.set(v);
            int x = rng.below(nx), y = nx + rng.below(ny);
            auto res = bipartite_flip_case(g, xs, ys, x, y);
            // distances measured inside the bipartite block and its
            // bipartite complement
            Graph block(nx + ny), coblock(nx + ny);
            for (int u = 0; u < nx; ++u)
                for (int v = nx; v < nx + ny; ++v)
                    (g.adjacent(u, v) ? block : coblock).add_edge(u, v);
            for (auto [u, v] : res.flipped.edges()) {
                CHECK(block.dist(u, v) <= 6);
                CHECK(coblock.dist(u, v) <= 6);
            }
            // and the output is a flip of the four-quadrant partition
            Bitset xp = g.neighbours(y) & xs, yp = g.neighbours(x) & ys;
            std::vector<int> label(nx + ny);
            for (int u = 0; u < nx + ny; ++u) {
                if (xs.test(u)) label[u] = xp.test(u) ? 0 : 1;
                else label[u] = yp.test(u) ? 2 : 3;
            }
            Graph full = block;  // block edges plus nothing else
            Graph target = res.flipped;
            CHECK(infer_flip(full, Partition::from_labels(nx + ny, label), target).has_value());
        }
    }
}

TEST_CASE("local flip") {
    SECTION("complete graph with one part and a single pick turns edgeless") {
        Graph k5 = complete_graph(5);
        auto [p, flipped] = local_flip(k5, Partition::whole(5), set_of(5, {0}));
        CHECK(flipped.edge_count() == 0);
    }
    SECTION("edgeless graph is kept") {
        Graph e = empty_graph(5);
        auto [p, flipped] = local_flip(e, Partition::whole(5), set_of(5, {2}));
        CHECK(flipped.edge_count() == 0);
    }
    SECTION("singleton parts force the edgeless graph") {
        Graph g = gnp(6, 0.5, 5);
        auto [p, flipped] = local_flip(g, Partition::singletons(6), Bitset::full(6));
        CHECK(flipped.edge_count() == 0);
    }
    SECTION("transversal precondition") {
        CHECK_THROWS_AS(local_flip(complete_graph(4), Partition::whole(4), set_of(4, {0, 1})),
                        InputError);
    }
    SECTION("result is a flip of the S-refinement") {
        Rng rng(23);
        for (int it = 0; it < 20; ++it) {
            Graph g = gnp(8, 0.5, rng.next());
            Partition p = atomic_types(g, set_of(8, {0, 1}));
            Bitset s(8);
            for (int a = 0; a < p.count(); ++a) s.set(p.part(a).find_first());
            auto [refined, flipped] = local_flip(g, p, s);
            CHECK(refined == s_refinement(g, p, s));
            CHECK(infer_flip(g, refined, flipped).has_value());
        }
    }
    SECTION("every output edge has flip distance at most 6 (exact check)") {
        Rng rng(29);
        RunConfig cfg;
        for (int it = 0; it < 10; ++it) {
            Graph g = gnp(8, 0.45, rng.next());
            Bitset seed_set = set_of(8, {0});
            if (rng.coin()) seed_set.set(4);
            Partition p = atomic_types(g, seed_set);
            if (p.count() > 5) continue;
            Bitset s(8);
            for (int a = 0; a < p.count(); ++a) s.set(p.part(a).find_first());
            auto [refined, flipped] = local_flip(g, p, s);
            for (auto [u, v] : flipped.edges()) {
                auto d = flip_dist(g, p, u, v, 7, EvalMode::Exact, cfg);
                CHECK(d.dist <= 6);
            }
        }
    }
}

TEST_CASE("chain to merge") {
    SECTION("cograph chain gives a valid 6-firm sequence") {
        auto inst = universal_cograph(3);
        auto seq = chain_to_merge(inst.graph, *inst.chain);
        REQUIRE(verify_merge(inst.graph, seq).ok());
        CHECK(firmness(inst.graph, seq) <= 6);
        CHECK(seq.steps.front().resolved.pair_count() == 0);
    }
    SECTION("complete graph: local flips are edgeless, so R stays empty") {
        Graph k6 = complete_graph(6);
        PartitionChain chain;
        chain.seq = {Partition::singletons(6), Partition::whole(6)};
        auto seq = chain_to_merge(k6, chain);
        REQUIRE(verify_merge(k6, seq).ok());
        CHECK(seq.steps.back().resolved.pair_count() == 0);
        CHECK(width_merge(k6, seq, 3) == 1);
    }
    SECTION("random instances verify, are 6-firm, and resolve only close pairs") {
        Rng rng(41);
        RunConfig wide;
        wide.flip_exact_cap = 6;
        for (int it = 0; it < 6; ++it) {
            Graph g = gnp(8, 0.5, rng.next());
            auto chain = random_maximal_chain(8, rng.next());
            auto seq = chain_to_merge(g, chain);
            REQUIRE(verify_merge(g, seq).ok());
            CHECK(firmness(g, seq) <= 6);
        }
        // the stronger per-step property dist_{P_i}(u,v) <= 6 for uv in R_i,
        // exact on a smaller instance
        Graph g = gnp(6, 0.5, rng.next());
        auto chain = random_maximal_chain(6, rng.next());
        auto seq = chain_to_merge(g, chain);
        REQUIRE(verify_merge(g, seq).ok());
        for (int i = 0; i < chain.length(); ++i) {
            for (auto [u, v] : seq.steps[i].resolved.pairs()) {
                auto d = flip_dist(g, chain.seq[i], u, v, 7, EvalMode::Exact, wide);
                CHECK(d.dist <= 6);
            }
        }
    }
    SECTION("width transfer: output width at r bounded by k*pi(k) at 6r+1") {
        Rng rng(43);
        RunConfig wide;
        wide.flip_exact_cap = 6;
        wide.pi_exact_m = 6;
        for (int it = 0; it < 5; ++it) {
            Graph g = gnp(6, 0.5, rng.next());
            auto chain = random_maximal_chain(6, rng.next());
            auto seq = chain_to_merge(g, chain);
            REQUIRE(verify_merge(g, seq).ok());
            int k = partition_width(g, chain, 7, EvalMode::Exact, wide).value;
            int pik = neighbourhood_complexity(g, k, ComplexityMode::Exact, wide).value;
            CHECK(width_merge(g, seq, 1) <= k * pik);
        }
    }
}

TEST_CASE("classify part") {
    SECTION("singletons are small") {
        ResolvedSet r(5);
        auto c = classify_part(r, set_of(5, {3}), 2, 6);
        CHECK(c.cls == PartClass::Small);
        CHECK(c.witnesses == std::vector<int>{3});
    }
    SECTION("two far components are medium") {
        // two paths of length 2, far apart in R
        ResolvedSet r(10);
        r.add(0, 1);
        r.add(1, 2);
        r.add(5, 6);
        r.add(6, 7);
        auto c = classify_part(r, set_of(10, {0, 1, 2, 5, 6, 7}), 2, 6);
        CHECK(c.cls == PartClass::Medium);
        CHECK(c.witnesses.size() == 2);
    }
    SECTION("three mutually far vertices are large") {
        ResolvedSet r(6);
        auto c = classify_part(r, set_of(6, {0, 2, 4}), 2, 6);
        CHECK(c.cls == PartClass::Large);
        CHECK(c.witnesses.size() == 3);
    }
}

TEST_CASE("greedy dual") {
    SECTION("one dominating vertex suffices") {
        Graph g(5);
        for (int v = 1; v < 5; ++v) g.add_edge(0, v);
        Bitset d = greedy_dual(g, set_of(5, {0}), set_of(5, {1, 2, 3, 4}));
        CHECK(d == set_of(5, {0}));
    }
    SECTION("anti-complete pair needs one anti-dominator") {
        Graph g(6);
        g.add_edge(0, 1);  // edge inside X, no cross edges
        Bitset d = greedy_dual(g, set_of(6, {0, 1, 2}), set_of(6, {3, 4, 5}));
        CHECK(d.count() == 1);
        CHECK(d.is_subset_of(set_of(6, {3, 4, 5})));
    }
    SECTION("complete bipartite sides") {
        Graph g(6);
        for (int u = 0; u < 3; ++u)
            for (int v = 3; v < 6; ++v) g.add_edge(u, v);
        Bitset d = greedy_dual(g, set_of(6, {0, 1, 2}), set_of(6, {3, 4, 5}));
        CHECK(d.count() == 1);
    }
    SECTION("empty input and singleton self-pair") {
        Graph g(4);
        CHECK(greedy_dual(g, Bitset(4), set_of(4, {1})).empty());
        CHECK(greedy_dual(g, set_of(4, {2}), set_of(4, {2})).empty());
    }
    SECTION("result is inclusion-minimal and a dual") {
        Rng rng(51);
        for (int it = 0; it < 40; ++it) {
            Graph g = gnp(8, 0.5, rng.next());
            Bitset xs(8), ys(8);
            for (int v = 0; v < 4; ++v)
                if (rng.coin()) xs.set(v);
            for (int v = 4; v < 8; ++v)
                if (rng.coin()) ys.set(v);
            if (xs.empty() || ys.empty()) continue;
            Bitset d = greedy_dual(g, xs, ys);
            auto dominates = [&](const Bitset& s) {
                Bitset cov(8);
                (s & xs).for_each([&](int u) { cov |= g.neighbours(u); });
                return ys.is_subset_of(cov);
            };
            auto antidominates = [&](const Bitset& s) {
                Bitset cov(8);
                (s & ys).for_each([&](int u) {
                    Bitset non = g.neighbours(u).complemented();
                    non.reset(u);
                    cov |= non;
                });
                return xs.is_subset_of(cov);
            };
            bool is_dual = (d.is_subset_of(xs) && dominates(d)) ||
                           (d.is_subset_of(ys) && antidominates(d));
            CHECK(is_dual);
            bool minimal = true;
            d.for_each([&](int v) {
                Bitset smaller = d;
                smaller.reset(v);
                if ((smaller.is_subset_of(xs) && dominates(smaller)) ||
                    (smaller.is_subset_of(ys) && antidominates(smaller)))
                    minimal = false;
            });
            CHECK(minimal);
        }
    }
}

TEST_CASE("incremental flip containment with the full vertex set") {
    // S = V is always a (2,t)-sample set of (singletons, R); the flip must
    // satisfy Ball^r_{G'}(v) ⊆ Ball^{(2t+1)r}_R(v)
    Rng rng(61);
    for (int it = 0; it < 10; ++it) {
        Graph g = gnp(9, 0.4, rng.next());
        ResolvedSet r(9);
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v)
                if (rng.below(4) == 0) r.add(u, v);
        for (int t : {1, 2}) {
            Graph flipped = incremental_flip(g, Bitset::full(9), r, t);
            for (int v = 0; v < 9; ++v)
                for (int rad : {1, 2})
                    CHECK(flipped.ball(v, rad).is_subset_of(r.ball(v, (2 * t + 1) * rad)));
        }
    }
}
