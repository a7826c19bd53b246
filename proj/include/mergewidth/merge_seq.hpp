#pragma once

#include <map>
#include <string>
#include <vector>

#include "flips.hpp"
#include "graph.hpp"
#include "partition.hpp"

namespace mw {

struct MergeStep {
    Partition partition;
    ResolvedSet resolved;
};

/// Merge sequence (P_1,R_1),...,(P_m,R_m): coarsening partitions from
/// singletons to {V}, monotone resolved sets, each P_t homogeneous modulo R_t.
struct MergeSequence {
    std::vector<MergeStep> steps;

    int length() const { return int(steps.size()); }
    int n() const { return steps.empty() ? 0 : steps.front().partition.n(); }
};

struct TransientStep {
    Partition partition;
    FlipSpec flip;
    Graph flipped;  // materialized P_t-flip of the base graph
};

struct TransientSequence {
    std::vector<TransientStep> steps;

    int length() const { return int(steps.size()); }
};

struct Violation {
    std::string clause;
    int step = -1;
    std::string detail;
};

struct VerifyReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every clause of the merge-sequence definition and reports all
/// violations (refinement, endpoints, R-monotonicity, homogeneity).
inline VerifyReport verify_merge(const Graph& g, const MergeSequence& seq) {
    VerifyReport rep;
    auto fail = [&](std::string clause, int step, std::string detail = "") {
        rep.violations.push_back({std::move(clause), step, std::move(detail)});
    };
    if (seq.steps.empty()) {
        fail("nonempty", -1, "sequence has no steps");
        return rep;
    }
    const int n = g.size();
    const int m = seq.length();
    for (int t = 0; t < m; ++t) {
        if (seq.steps[t].partition.n() != n) fail("dimensions", t, "partition universe != |V|");
        if (seq.steps[t].resolved.universe() != n) fail("dimensions", t, "resolved universe != |V|");
    }
    if (!rep.ok()) return rep;

    if (seq.steps.front().partition != Partition::singletons(n))
        fail("endpoints", 0, "P_1 is not the partition into singletons");
    if (seq.steps.back().partition.count() != 1)
        fail("endpoints", m - 1, "P_m is not the one-part partition");
    for (int t = 0; t + 1 < m; ++t) {
        if (!seq.steps[t].partition.refines(seq.steps[t + 1].partition))
            fail("refinement", t, "P_t does not refine P_{t+1}");
        if (!seq.steps[t].resolved.subset_of(seq.steps[t + 1].resolved))
            fail("r-monotonicity", t, "R_t is not contained in R_{t+1}");
    }
    for (int t = 0; t < m; ++t) {
        auto h = homogeneous_modulo(g, seq.steps[t].partition, seq.steps[t].resolved);
        if (!h.ok)
            fail("homogeneity", t,
                 "part pair (" + std::to_string(h.offending.first) + "," +
                     std::to_string(h.offending.second) + ") mixes unresolved edges and non-edges");
    }
    // deterministic report order
    std::stable_sort(rep.violations.begin(), rep.violations.end(),
                     [](const Violation& a, const Violation& b) {
                         if (a.step != b.step) return a.step < b.step;
                         return a.clause < b.clause;
                     });
    return rep;
}

/// Radius-r width: max over t in [1,m-1] and v of |Ball^r_{R_{t+1}}(v)/P_t|.
/// The mismatched index (P_t with R_{t+1}) is the definition.
inline int width_merge(const Graph& g, const MergeSequence& seq, int r) {
    (void)g;
    int w = 0;
    for (int t = 0; t + 1 < seq.length(); ++t) {
        const auto& p = seq.steps[t].partition;
        const auto& rr = seq.steps[t + 1].resolved;
        for (int v = 0; v < p.n(); ++v)
            w = std::max(w, p.quotient_count(rr.ball(v, r)));
    }
    return w;
}

/// Turns a valid sequence into one whose partitions form a maximal chain:
/// duplicate partitions are dropped (keeping the earlier R), skipped levels
/// get intermediates carrying the successor's R. Width never increases.
inline MergeSequence canonicalize(const MergeSequence& seq) {
    MergeSequence out;
    for (int t = 0; t < seq.length(); ++t) {
        if (!out.steps.empty() && out.steps.back().partition == seq.steps[t].partition)
            continue;  // drop the later duplicate
        if (!out.steps.empty()) {
            // decompose a multi-merge into pairwise merges, all carrying R_{t+1}
            Partition cur = out.steps.back().partition;
            const Partition& target = seq.steps[t].partition;
            while (cur.count() > target.count() + 1) {
                // merge the two smallest-id sub-parts of the smallest-id
                // target part that is still split
                int chosen_a = -1, chosen_b = -1;
                for (int tp = 0; tp < target.count() && chosen_a < 0; ++tp) {
                    std::vector<int> subs;
                    for (int cp = 0; cp < cur.count(); ++cp)
                        if (cur.part(cp).is_subset_of(target.part(tp))) subs.push_back(cp);
                    if (subs.size() >= 2) {
                        chosen_a = subs[0];
                        chosen_b = subs[1];
                    }
                }
                cur = cur.merge_parts(chosen_a, chosen_b);
                out.steps.push_back({cur, seq.steps[t].resolved});
            }
        }
        out.steps.push_back(seq.steps[t]);
    }
    return out;
}

/// Partition chain of a sequence, consecutive duplicates dropped.
inline PartitionChain chain_of(const MergeSequence& seq) {
    PartitionChain chain;
    for (auto& st : seq.steps)
        if (chain.seq.empty() || !(chain.seq.back() == st.partition))
            chain.seq.push_back(st.partition);
    return chain;
}

/// Max over finally-resolved pairs of max(dist_G, dist_complement); 0 when
/// R_m is empty. A sequence is d-firm when this is at most d.
inline int firmness(const Graph& g, const MergeSequence& seq) {
    if (seq.steps.empty()) return 0;
    const auto& rm = seq.steps.back().resolved;
    Graph co = g.complement();
    int worst = 0;
    for (int u = 0; u < g.size(); ++u) {
        if (rm.row(u).empty()) continue;
        auto dg = g.distances_from(u);
        auto dc = co.distances_from(u);
        rm.row(u).for_each([&](int v) {
            if (v < u) return;
            worst = std::max(worst, std::max(dg[v], dc[v]));
        });
    }
    return worst;
}

/// Homogeneity-witness conversion: each step's witness flip has all its edges
/// inside R_t, so the transient width never exceeds the merge width.
inline TransientSequence merge_to_transient(const Graph& g, const MergeSequence& seq) {
    TransientSequence out;
    for (const auto& st : seq.steps) {
        auto h = homogeneous_modulo(g, st.partition, st.resolved);
        if (!h.ok) throw InputError("merge_to_transient: sequence not homogeneous");
        TransientStep ts;
        ts.partition = st.partition;
        ts.flip = h.witness;
        ts.flipped = apply_flip(g, st.partition, h.witness);
        out.steps.push_back(std::move(ts));
    }
    return out;
}

inline VerifyReport verify_transient(const Graph& g, const TransientSequence& seq) {
    VerifyReport rep;
    auto fail = [&](std::string clause, int step, std::string detail = "") {
        rep.violations.push_back({std::move(clause), step, std::move(detail)});
    };
    if (seq.steps.empty()) {
        fail("nonempty", -1);
        return rep;
    }
    const int n = g.size();
    const int m = seq.length();
    if (seq.steps.front().partition != Partition::singletons(n))
        fail("endpoints", 0, "P_1 is not the partition into singletons");
    if (seq.steps.back().partition.count() != 1)
        fail("endpoints", m - 1, "P_m is not the one-part partition");
    for (int t = 0; t + 1 < m; ++t)
        if (!seq.steps[t].partition.refines(seq.steps[t + 1].partition))
            fail("refinement", t);
    for (int t = 0; t < m; ++t) {
        const auto& st = seq.steps[t];
        if (st.flipped.size() != n) {
            fail("flip", t, "flipped graph has wrong size");
            continue;
        }
        if (!(apply_flip(g, st.partition, st.flip) == st.flipped))
            fail("flip", t, "G_t is not the stated P_t-flip of G");
    }
    return rep;
}

/// Max over t in [1,m-1] and v of |Ball^r_{G_{t+1}}(v)/P_t|.
inline int transient_width(const Graph& g, const TransientSequence& seq, int r) {
    (void)g;
    int w = 0;
    for (int t = 0; t + 1 < seq.length(); ++t) {
        const auto& p = seq.steps[t].partition;
        const auto& h = seq.steps[t + 1].flipped;
        for (int v = 0; v < p.n(); ++v)
            w = std::max(w, p.quotient_count(h.ball(v, r)));
    }
    return w;
}

struct ShapeMetrics {
    bool positive = false;  // R_m contained in E(G)
    int length = 0;
    int valency = 1;  // max parts of P_i merged into one part of P_{i+1}
    std::map<int, int> universal_profile;  // radius -> width
};

inline int valency_of(const MergeSequence& seq) {
    int val = 1;
    for (int t = 0; t + 1 < seq.length(); ++t) {
        const auto& fine = seq.steps[t].partition;
        const auto& coarse = seq.steps[t + 1].partition;
        std::vector<int> cnt(coarse.count(), 0);
        for (int p = 0; p < fine.count(); ++p)
            ++cnt[coarse.part_of(fine.part(p).find_first())];
        for (int c : cnt) val = std::max(val, c);
    }
    return val;
}

inline ShapeMetrics shape_metrics(const Graph& g, const MergeSequence& seq, int r_max) {
    ShapeMetrics sm;
    sm.length = seq.length();
    sm.valency = valency_of(seq);
    sm.positive = true;
    const auto& rm = seq.steps.back().resolved;
    for (int u = 0; u < g.size() && sm.positive; ++u)
        if (!rm.row(u).is_subset_of(g.neighbours(u))) sm.positive = false;
    for (int r = 1; r <= r_max; ++r) sm.universal_profile[r] = width_merge(g, seq, r);
    return sm;
}

}  // namespace mw
