#include <catch2/catch_amalgamated.hpp>

#include "mergewidth/generators.hpp"
#include "mergewidth/merge_seq.hpp"

using namespace mw;

namespace {

MergeSequence trivial_sequence(const Graph& g, const PartitionChain& chain) {
    // valid for graphs where every part pair stays homogeneous with R = {}
    MergeSequence seq;
    for (auto& p : chain.seq) seq.steps.push_back({p, ResolvedSet(g.size())});
    return seq;
}

}  // namespace

TEST_CASE("verify_merge on the cograph certificate") {
    auto inst = universal_cograph(3);
    REQUIRE(inst.merge.has_value());
    CHECK(verify_merge(inst.graph, *inst.merge).ok());

    SECTION("swapping resolved sets breaks monotonicity") {
        MergeSequence bad = *inst.merge;
        std::swap(bad.steps[1].resolved, bad.steps[2].resolved);
        auto rep = verify_merge(inst.graph, bad);
        CHECK_FALSE(rep.ok());
        bool saw_monotonicity = false;
        for (auto& v : rep.violations) saw_monotonicity |= v.clause == "r-monotonicity";
        CHECK(saw_monotonicity);
    }
    SECTION("collapsing the path without resolutions breaks homogeneity") {
        Graph p3 = path_graph(3);
        MergeSequence bad;
        bad.steps.push_back({Partition::singletons(3), ResolvedSet(3)});
        bad.steps.push_back({Partition::whole(3), ResolvedSet(3)});
        auto rep = verify_merge(p3, bad);
        CHECK_FALSE(rep.ok());
        CHECK(rep.violations.front().clause == "homogeneity");
    }
}

TEST_CASE("width_merge") {
    SECTION("cograph certificate has width one at every radius") {
        auto inst = universal_cograph(3);
        for (int r : {1, 2, 3, 7}) CHECK(width_merge(inst.graph, *inst.merge, r) == 1);
    }
    SECTION("complete graph, arbitrary chain, R empty") {
        Graph k5 = complete_graph(5);
        auto seq = trivial_sequence(k5, random_maximal_chain(5, 42));
        REQUIRE(verify_merge(k5, seq).ok());
        for (int r : {1, 2, 4}) CHECK(width_merge(k5, seq, r) == 1);
    }
    SECTION("width is monotone non-decreasing in the radius") {
        auto inst = universal_cograph(2);
        Graph p4 = path_graph(4);
        MergeSequence seq = path_positive_certificate(4);
        REQUIRE(verify_merge(p4, seq).ok());
        int prev = 0;
        for (int r = 1; r <= 4; ++r) {
            int w = width_merge(p4, seq, r);
            CHECK(w >= prev);
            prev = w;
        }
    }
}

TEST_CASE("canonicalize") {
    SECTION("maximal chains are unchanged") {
        auto seq = path_positive_certificate(4);
        auto canon = canonicalize(seq);
        REQUIRE(canon.length() == seq.length());
        for (int t = 0; t < seq.length(); ++t)
            CHECK(canon.steps[t].partition == seq.steps[t].partition);
    }
    SECTION("a skipped level gets one inserted step with the successor's R") {
        Graph k4 = complete_graph(4);
        MergeSequence seq;
        seq.steps.push_back({Partition::singletons(4), ResolvedSet(4)});
        ResolvedSet r2(4);
        r2.add(0, 1);
        seq.steps.push_back({Partition::whole(4), r2});
        REQUIRE(verify_merge(k4, seq).ok());
        auto canon = canonicalize(seq);
        CHECK(canon.length() == 4);
        REQUIRE(verify_merge(k4, canon).ok());
        for (int t = 1; t < canon.length(); ++t)
            CHECK(canon.steps[t].resolved.contains(0, 1));
        // maximal now
        for (int t = 0; t + 1 < canon.length(); ++t)
            CHECK(canon.steps[t].partition.count() == canon.steps[t + 1].partition.count() + 1);
    }
    SECTION("width does not increase (cograph and path instances)") {
        auto inst = universal_cograph(3);
        auto canon = canonicalize(*inst.merge);
        REQUIRE(verify_merge(inst.graph, canon).ok());
        for (int r : {1, 2, 3})
            CHECK(width_merge(inst.graph, canon, r) <= width_merge(inst.graph, *inst.merge, r));
    }
    SECTION("duplicate partitions are dropped") {
        Graph k3 = complete_graph(3);
        MergeSequence seq;
        seq.steps.push_back({Partition::singletons(3), ResolvedSet(3)});
        seq.steps.push_back({Partition::singletons(3), ResolvedSet(3)});
        seq.steps.push_back({Partition::from_parts(3, {{0, 1}, {2}}), ResolvedSet(3)});
        seq.steps.push_back({Partition::whole(3), ResolvedSet(3)});
        auto canon = canonicalize(seq);
        CHECK(canon.length() == 3);
        REQUIRE(verify_merge(k3, canon).ok());
    }
}

TEST_CASE("transient sequences") {
    SECTION("cograph transient certificate verifies with width one") {
        auto inst = universal_cograph(3);
        REQUIRE(inst.transient.has_value());
        CHECK(verify_transient(inst.graph, *inst.transient).ok());
        for (int r : {1, 2, 3, 8}) CHECK(transient_width(inst.graph, *inst.transient, r) == 1);
    }
    SECTION("flip mismatch is reported") {
        auto inst = universal_cograph(2);
        TransientSequence bad = *inst.transient;
        bad.steps[1].flipped.add_edge(0, bad.steps[1].flipped.adjacent(0, 1) ? 2 : 1);
        CHECK_FALSE(verify_transient(inst.graph, bad).ok());
    }
    SECTION("complete graph with edgeless flips has width one") {
        Graph k4 = complete_graph(4);
        auto chain = random_maximal_chain(4, 9);
        TransientSequence ts;
        for (auto& p : chain.seq) {
            FlipSpec f;
            for (int a = 0; a < p.count(); ++a)
                for (int b = a; b < p.count(); ++b) f.flipped.emplace_back(a, b);
            TransientStep st;
            st.partition = p;
            st.flip = f;
            st.flipped = apply_flip(k4, p, f);
            CHECK(st.flipped.edge_count() == 0);
            ts.steps.push_back(std::move(st));
        }
        REQUIRE(verify_transient(k4, ts).ok());
        CHECK(transient_width(k4, ts, 3) == 1);
    }
    SECTION("homogeneity-witness conversion never exceeds the merge width") {
        for (int m : {2, 3}) {
            auto inst = universal_cograph(m);
            auto ts = merge_to_transient(inst.graph, *inst.merge);
            REQUIRE(verify_transient(inst.graph, ts).ok());
            for (int r : {1, 2, 3})
                CHECK(transient_width(inst.graph, ts, r) <= width_merge(inst.graph, *inst.merge, r));
        }
        Graph p5 = path_graph(5);
        auto seq = path_positive_certificate(5);
        auto ts = merge_to_transient(p5, seq);
        REQUIRE(verify_transient(p5, ts).ok());
        for (int r : {1, 2, 3})
            CHECK(transient_width(p5, ts, r) <= width_merge(p5, seq, r));
    }
}

TEST_CASE("firmness") {
    SECTION("no resolved pairs means firmness zero") {
        Graph k4 = complete_graph(4);
        auto seq = trivial_sequence(k4, random_maximal_chain(4, 3));
        CHECK(firmness(k4, seq) == 0);
    }
    SECTION("hand sequence on P4 resolving the end pair") {
        Graph p4 = path_graph(4);
        MergeSequence seq;
        seq.steps.push_back({Partition::singletons(4), ResolvedSet(4)});
        ResolvedSet r2(4);
        r2.add(0, 3);
        r2.add(0, 1);
        r2.add(1, 3);
        r2.add(2, 3);
        seq.steps.push_back({Partition::from_parts(4, {{0, 3}, {1}, {2}}), r2});
        seq.steps.push_back({Partition::from_parts(4, {{0, 3}, {1, 2}}), r2});
        ResolvedSet r4 = r2;
        r4.add(1, 2);
        seq.steps.push_back({Partition::whole(4), r4});
        REQUIRE(verify_merge(p4, seq).ok());
        CHECK(firmness(p4, seq) == 3);  // dist_G(0,3)=3 dominates
    }
}

TEST_CASE("shape metrics") {
    SECTION("cograph certificate") {
        auto inst = universal_cograph(3);
        auto sm = shape_metrics(inst.graph, *inst.merge, 3);
        CHECK_FALSE(sm.positive);  // R holds non-edges within parts too
        CHECK(sm.length == 4);
        CHECK(sm.valency == 2);
        for (auto& [r, w] : sm.universal_profile) CHECK(w == 1);
    }
    SECTION("R empty is positive; maximal chains have valency two") {
        Graph k5 = complete_graph(5);
        auto seq = trivial_sequence(k5, random_maximal_chain(5, 8));
        auto sm = shape_metrics(k5, seq, 2);
        CHECK(sm.positive);
        CHECK(sm.length == 5);
        CHECK(sm.valency == 2);
    }
    SECTION("path positive certificate is positive") {
        Graph p5 = path_graph(5);
        auto sm = shape_metrics(p5, path_positive_certificate(5), 2);
        CHECK(sm.positive);
    }
}
