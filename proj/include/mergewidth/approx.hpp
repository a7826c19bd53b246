#pragma once

#include <vector>

#include "conversions.hpp"
#include "width.hpp"

namespace mw {

/// Strictly growing subset chain with per-edge bottleneck weights.
struct LatticePath {
    std::vector<Bitset> subsets;  // {} = T_0 ⊂ T_1 ⊂ ... ⊂ T_n = V
    std::vector<int> weights;     // f(T_{i-1}, T_i)
};

struct ApproxResult {
    TransientSequence transient;
    MergeSequence merged;
    int bottleneck = 0;
    LatticePath path;
};

namespace detail {

inline Bitset mask_to_bitset(uint32_t mask, int n) {
    Bitset b(n);
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) b.set(v);
    return b;
}

/// Per-subset structures of the approximation: atomic types over S, their
/// first-element transversal refinement, and the deterministic local flip.
struct SubsetFlip {
    Partition types;      // N_S
    Partition refined;    // N'_S = N_S ∧ X_S
    Graph flipped;        // G_{N_S}
    std::vector<Bitset> balls;  // Ball^r in the flipped graph, per vertex
};

inline SubsetFlip subset_flip(const Graph& g, uint32_t mask, int r) {
    SubsetFlip out;
    const int n = g.size();
    out.types = atomic_types(g, mask_to_bitset(mask, n));
    Bitset reps(n);
    for (int a = 0; a < out.types.count(); ++a) reps.set(out.types.part(a).find_first());
    auto [refined, flipped] = local_flip(g, out.types, reps);
    out.refined = std::move(refined);
    out.flipped = std::move(flipped);
    out.balls.reserve(n);
    for (int v = 0; v < n; ++v) out.balls.push_back(out.flipped.ball(v, r));
    return out;
}

inline Partition refined_types(const Graph& g, uint32_t mask) {
    Partition types = atomic_types(g, mask_to_bitset(mask, g.size()));
    Bitset reps(g.size());
    for (int a = 0; a < types.count(); ++a) reps.set(types.part(a).find_first());
    return s_refinement(g, types, reps);
}

inline int edge_weight(const Graph& g, const SubsetFlip& pred, uint32_t succ_mask) {
    Partition succ = refined_types(g, succ_mask);
    int w = 0;
    for (int v = 0; v < g.size(); ++v)
        w = std::max(w, succ.quotient_count(pred.balls[v]));
    return w;
}

}  // namespace detail

/// Subset-DP approximation of merge-width: for every S the deterministic
/// S-flip G_{N_S}, edge weights f(S, S+v) = max_u |Ball^r_{G_{N_S}}(u)/N'_T|,
/// and the bottleneck-minimal chain from {} to V. Returns the transient
/// sequence read off the optimal chain and the merge sequence obtained by
/// converting its partition chain.
inline ApproxResult approx_merge_width(const Graph& g, int r, const RunConfig& cfg = {}) {
    const int n = g.size();
    if (n > cfg.dp_budget) throw BudgetError("approx_merge_width: n exceeds the DP budget");
    if (n > 20) throw BudgetError("approx_merge_width: hard limit n <= 20");
    if (n == 0) throw InputError("empty graph");

    const uint32_t full = (n == 32) ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);
    std::vector<int16_t> best(size_t(full) + 1, int16_t(n + 1));
    best[0] = 0;
    // forward relaxation in numeric order: S is final before any T > S
    for (uint32_t s = 0; s < full; ++s) {
        auto pred = detail::subset_flip(g, s, r);
        for (int v = 0; v < n; ++v) {
            if ((s >> v) & 1) continue;
            uint32_t t = s | (uint32_t{1} << v);
            int w = detail::edge_weight(g, pred, t);
            int cand = std::max(int(best[s]), w);
            if (cand < best[t]) best[t] = int16_t(cand);
        }
    }

    ApproxResult res;
    res.bottleneck = best[full];

    // reconstruct the chain backwards, smallest removed vertex first
    std::vector<uint32_t> chain{full};
    uint32_t cur = full;
    while (cur) {
        bool moved = false;
        for (int v = 0; v < n && !moved; ++v) {
            if (!((cur >> v) & 1)) continue;
            uint32_t prev = cur ^ (uint32_t{1} << v);
            auto pred = detail::subset_flip(g, prev, r);
            int w = detail::edge_weight(g, pred, cur);
            if (std::max(int(best[prev]), w) == best[cur]) {
                chain.push_back(prev);
                cur = prev;
                moved = true;
            }
        }
        if (!moved) throw std::logic_error("approx path reconstruction failed");
    }
    std::reverse(chain.begin(), chain.end());  // {} ... V

    // lattice path with recomputed weights
    for (uint32_t m : chain) res.path.subsets.push_back(detail::mask_to_bitset(m, n));
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        auto pred = detail::subset_flip(g, chain[i], r);
        res.path.weights.push_back(detail::edge_weight(g, pred, chain[i + 1]));
    }

    // transient sequence: P'_i = N'_{S_{n-i}}, G_i = G_{N_{S_{n-i}}}
    for (int i = 0; i <= n; ++i) {
        auto sf = detail::subset_flip(g, chain[size_t(n - i)], r);
        TransientStep st;
        st.partition = sf.refined;
        auto spec = infer_flip(g, sf.refined, sf.flipped);
        if (!spec) throw std::logic_error("local flip is not a flip of its own refinement");
        st.flip = *spec;
        st.flipped = sf.flipped;
        res.transient.steps.push_back(std::move(st));
    }

    // merge sequence via the chain-to-merge conversion on the refined chain
    PartitionChain pchain;
    for (auto& st : res.transient.steps)
        if (pchain.seq.empty() || !(pchain.seq.back() == st.partition))
            pchain.seq.push_back(st.partition);
    res.merged = chain_to_merge(g, pchain);
    return res;
}

}  // namespace mw
