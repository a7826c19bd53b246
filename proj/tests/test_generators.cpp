#include <catch2/catch_amalgamated.hpp>

#include "mergewidth/generators.hpp"
#include "mergewidth/merge_seq.hpp"

using namespace mw;

TEST_CASE("universal cograph structure") {
    SECTION("m=2 is two disjoint edges") {
        auto inst = universal_cograph(2);
        CHECK(inst.graph.size() == 4);
        CHECK(inst.graph.edge_count() == 2);
        CHECK(inst.graph.adjacent(0, 1));
        CHECK(inst.graph.adjacent(2, 3));
        CHECK_FALSE(inst.graph.adjacent(0, 2));
    }
    SECTION("vertex count is 2^m") {
        for (int m : {1, 2, 3, 4, 5}) CHECK(universal_cograph(m).graph.size() == (1 << m));
    }
    SECTION("bounds") {
        CHECK_THROWS_AS(universal_cograph(0), BudgetError);
        CHECK_THROWS_AS(universal_cograph(13), BudgetError);
    }
}

TEST_CASE("universal cograph certificates verify") {
    for (int m : {2, 3, 4}) {
        auto inst = universal_cograph(m);
        REQUIRE(verify_merge(inst.graph, *inst.merge).ok());
        REQUIRE(verify_transient(inst.graph, *inst.transient).ok());
        CHECK_NOTHROW(inst.chain->validate());
        CHECK_NOTHROW(inst.order->validate(inst.graph.size()));
        for (int r : {1, 2, 3}) {
            CHECK(width_merge(inst.graph, *inst.merge, r) == 1);
            CHECK(transient_width(inst.graph, *inst.transient, r) == 1);
        }
        // the transversal-prefix order: each prefix of size 2^i is a
        // transversal of the depth-i partition
        for (int i = 0; i <= m; ++i) {
            int d = m + 1 - i - 1;  // chain index of the depth-i partition
            const Partition& p = inst.chain->seq[d];
            std::vector<int> hits(p.count(), 0);
            for (int j = 0; j < (1 << i); ++j) ++hits[p.part_of(inst.order->order[j])];
            for (int h : hits) CHECK(h == 1);
        }
    }
}

TEST_CASE("vector bipartite graph") {
    SECTION("m=1 inner products") {
        Graph g = vector_bipartite(1);
        REQUIRE(g.size() == 4);
        CHECK(g.adjacent(0, 2));   // 0.0 = 0
        CHECK(g.adjacent(0, 3));   // 0.1 = 0
        CHECK(g.adjacent(1, 2));   // 1.0 = 0
        CHECK_FALSE(g.adjacent(1, 3));  // 1.1 = 1
    }
    SECTION("fibers of independent quadruples have size 2^{m-4}") {
        const int m = 5;
        Graph g = vector_bipartite(m);
        const int half = 1 << m;
        // four linearly independent vectors on the right side
        std::vector<uint32_t> w = {0b00001, 0b00010, 0b00100, 0b01000};
        for (int b = 0; b < 16; ++b) {
            int count = 0;
            for (uint32_t x = 0; x < uint32_t(half); ++x) {
                bool match = true;
                for (int i = 0; i < 4 && match; ++i) {
                    int dot = __builtin_popcount(x & w[i]) % 2;
                    match = dot == ((b >> i) & 1);
                }
                count += match;
            }
            CHECK(count == (1 << (m - 4)));
        }
        (void)g;
    }
}

TEST_CASE("corpus constructors") {
    CHECK(path_graph(4).edge_count() == 3);
    CHECK(cycle_graph(5).edge_count() == 5);
    CHECK(grid_graph(3, 3).edge_count() == 12);
    CHECK(complete_graph(5).edge_count() == 10);
    CHECK(empty_graph(5).edge_count() == 0);

    SECTION("cubic graphs have all degrees three; complement is involutive") {
        Graph c = random_cubic(8, 7);
        for (int v = 0; v < 8; ++v) CHECK(c.degree(v) == 3);
        CHECK(c.complement().complement() == c);
        CHECK_THROWS_AS(random_cubic(5, 1), InputError);
    }
    SECTION("gnp is seed-deterministic") {
        CHECK(gnp(10, 0.5, 99) == gnp(10, 0.5, 99));
        CHECK_FALSE(gnp(10, 0.5, 99) == gnp(10, 0.5, 100));
    }
}

TEST_CASE("positive certificates") {
    SECTION("path") {
        for (int n : {3, 4, 6}) {
            Graph g = path_graph(n);
            auto seq = path_positive_certificate(n);
            REQUIRE(verify_merge(g, seq).ok());
            auto sm = shape_metrics(g, seq, 1);
            CHECK(sm.positive);
        }
    }
    SECTION("biclique") {
        auto [g, seq] = biclique_positive_certificate(3, 4);
        REQUIRE(verify_merge(g, seq).ok());
        CHECK(shape_metrics(g, seq, 1).positive);
    }
}
