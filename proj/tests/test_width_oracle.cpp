#include <catch2/catch_amalgamated.hpp>

#include "mergewidth/generators.hpp"
#include "mergewidth/oracle.hpp"

using namespace mw;

TEST_CASE("canonical graph enumeration") {
    CHECK(canonical_graphs(1).size() == 1);
    CHECK(canonical_graphs(2).size() == 2);
    CHECK(canonical_graphs(3).size() == 4);
    CHECK(canonical_graphs(4).size() == 11);
    CHECK(canonical_graphs(5).size() == 34);
}

TEST_CASE("oracle values on known families") {
    SECTION("complete graphs are width one in every variant") {
        for (int n : {2, 3, 4, 5})
            for (int r : {1, 2})
                for (auto v : {Variant::MW, Variant::TMW, Variant::PMW, Variant::DMW})
                    CHECK(exact_width(complete_graph(n), v, r).value == 1);
    }
    SECTION("edgeless graphs are width one in every variant") {
        for (int r : {1, 2})
            for (auto v : {Variant::MW, Variant::TMW, Variant::PMW, Variant::DMW})
                CHECK(exact_width(empty_graph(5), v, r).value == 1);
    }
    SECTION("universal cograph 2K2") {
        Graph g = universal_cograph(2).graph;
        for (int r : {1, 2, 3})
            CHECK(exact_width(g, Variant::MW, r).value == 1);
    }
    SECTION("budget") {
        CHECK_THROWS_AS(exact_width(empty_graph(6), Variant::MW, 1), BudgetError);
    }
}

TEST_CASE("oracle witnesses evaluate to the reported width") {
    std::vector<Graph> graphs = {path_graph(4), cycle_graph(5), universal_cograph(2).graph,
                                 gnp(5, 0.5, 11), gnp(5, 0.7, 12)};
    RunConfig cfg;
    for (auto& g : graphs) {
        for (int r : {1, 2}) {
            auto mwr = exact_width(g, Variant::MW, r, cfg);
            REQUIRE(mwr.merge_witness.has_value());
            REQUIRE(verify_merge(g, *mwr.merge_witness).ok());
            CHECK(width_merge(g, *mwr.merge_witness, r) == mwr.value);

            auto tmwr = exact_width(g, Variant::TMW, r, cfg);
            REQUIRE(tmwr.transient_witness.has_value());
            REQUIRE(verify_transient(g, *tmwr.transient_witness).ok());
            CHECK(transient_width(g, *tmwr.transient_witness, r) == tmwr.value);

            auto pmwr = exact_width(g, Variant::PMW, r, cfg);
            REQUIRE(pmwr.chain_witness.has_value());
            RunConfig wide = cfg;
            wide.flip_exact_cap = g.size();
            auto eval = partition_width(g, *pmwr.chain_witness, r, EvalMode::Exact, wide);
            CHECK(eval.mode == WidthMode::Exact);
            CHECK(eval.value == pmwr.value);

            auto dmwr = exact_width(g, Variant::DMW, r, cfg);
            REQUIRE(dmwr.order_witness.has_value());
            auto deval = definable_width(g, *dmwr.order_witness, r, EvalMode::Exact, wide);
            CHECK(deval.mode == WidthMode::Exact);
            CHECK(deval.value == dmwr.value);
        }
    }
}

TEST_CASE("restricted mw search matches the unrestricted one on tiny graphs") {
    for (int n : {2, 3, 4}) {
        for (auto& g : canonical_graphs(n)) {
            for (int r : {1, 2}) {
                int restricted = exact_width(g, Variant::MW, r).value;
                int unrestricted = exact_mw_unrestricted(g, r);
                CHECK(unrestricted <= restricted);
                CHECK(restricted == unrestricted);
            }
        }
    }
}

TEST_CASE("inequality chain on graphs with at most four vertices") {
    for (int n : {2, 3, 4}) {
        for (auto& g : canonical_graphs(n)) {
            for (int r : {1, 2}) {
                int mwv = exact_width(g, Variant::MW, r).value;
                int tmwv = exact_width(g, Variant::TMW, r).value;
                int pmwv = exact_width(g, Variant::PMW, r).value;
                int dmwv = exact_width(g, Variant::DMW, r).value;
                CHECK(pmwv <= tmwv);
                CHECK(tmwv <= mwv);
                CHECK(pmwv <= 2 * dmwv + 1);
            }
        }
    }
}

TEST_CASE("infinite radius equals evaluation at n-1") {
    for (auto v : {Variant::MW, Variant::PMW}) {
        Graph g = path_graph(5);
        auto inf = infinite_radius(g, v);
        auto fixed = exact_width(g, v, 4);
        CHECK(inf.value == fixed.value);
        CHECK(inf.radius == kInf);
    }
    CHECK(infinite_radius(complete_graph(4), Variant::MW).value == 1);
    CHECK(infinite_radius(universal_cograph(2).graph, Variant::MW).value == 1);
}

TEST_CASE("widths are monotone non-decreasing in the radius") {
    for (auto& g : {path_graph(5), cycle_graph(5), gnp(5, 0.5, 4)}) {
        for (auto v : {Variant::MW, Variant::PMW, Variant::DMW}) {
            int prev = 0;
            for (int r = 1; r <= 4; ++r) {
                int w = exact_width(g, v, r).value;
                CHECK(w >= prev);
                prev = w;
            }
        }
    }
}

TEST_CASE("adding resolved pairs never lowers later widths") {
    Rng rng(21);
    for (int it = 0; it < 10; ++it) {
        Graph g = gnp(5, 0.5, rng.next());
        auto seq = exact_width(g, Variant::MW, 1).merge_witness.value();
        // resolve one extra pair from some step onward
        int u = rng.below(5), v = rng.below(4);
        if (v >= u) ++v;
        int from = 1 + rng.below(std::max(1, seq.length() - 1));
        MergeSequence fat = seq;
        for (int t = from; t < fat.length(); ++t)
            if (!fat.steps[t].resolved.contains(u, v)) fat.steps[t].resolved.add(u, v);
        if (!verify_merge(g, fat).ok()) continue;
        for (int r : {1, 2})
            CHECK(width_merge(g, fat, r) >= width_merge(g, seq, r));
    }
}

TEST_CASE("inserting an intermediate partition never increases chain width") {
    Rng rng(31);
    RunConfig wide;
    wide.flip_exact_cap = 6;
    for (int it = 0; it < 8; ++it) {
        Graph g = gnp(6, 0.5, rng.next());
        Partition mid = Partition::from_parts(6, {{0, 1, 2}, {3}, {4}, {5}});
        Partition mid2 = Partition::from_parts(6, {{0, 1, 2}, {3, 4, 5}});
        PartitionChain with_skip, with_insert;
        with_skip.seq = {Partition::singletons(6), mid2, Partition::whole(6)};
        with_insert.seq = {Partition::singletons(6), mid, mid2, Partition::whole(6)};
        for (int r : {1, 2}) {
            int coarse = partition_width(g, with_skip, r, EvalMode::Exact, wide).value;
            int fine = partition_width(g, with_insert, r, EvalMode::Exact, wide).value;
            CHECK(fine <= coarse);
        }
    }
}
