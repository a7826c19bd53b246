#pragma once

#include <optional>
#include <string>

#include "flips.hpp"
#include "merge_seq.hpp"

namespace mw {

/// EXACT only when every inner flip computation ran in exact mode; UPPER when
/// sampled flip balls (supersets) were involved; LOWER for witnessed bounds.
enum class WidthMode { Exact, Upper, Lower };

inline const char* to_string(WidthMode m) {
    switch (m) {
        case WidthMode::Exact: return "EXACT";
        case WidthMode::Upper: return "UPPER";
        case WidthMode::Lower: return "LOWER";
    }
    return "?";
}

struct WidthReport {
    std::string variant;
    int radius = 0;
    int value = 0;
    WidthMode mode = WidthMode::Exact;
    std::optional<MergeSequence> merge_witness;
    std::optional<TransientSequence> transient_witness;
    std::optional<PartitionChain> chain_witness;
    std::optional<VertexOrder> order_witness;
};

/// Radius-r width of a partition chain:
/// max over i in [1,m-1], v of |Ball^r_{P_{i+1}}(v) / P_i|.
inline WidthReport partition_width(const Graph& g, const PartitionChain& chain, int r,
                                   EvalMode mode = EvalMode::Auto, const RunConfig& cfg = {}) {
    chain.validate();
    WidthReport rep;
    rep.variant = "pmw";
    rep.radius = r;
    rep.mode = WidthMode::Exact;
    for (int i = 0; i + 1 < chain.length(); ++i) {
        auto balls = flip_balls(g, chain.seq[i + 1], r, mode, cfg);
        if (!balls.exact) rep.mode = WidthMode::Upper;
        for (int v = 0; v < g.size(); ++v)
            rep.value = std::max(rep.value, chain.seq[i].quotient_count(balls.balls[v]));
    }
    rep.chain_witness = chain;
    return rep;
}

/// Radius-r definable width of (G,<): with P_i the atomic types over the
/// first n-i vertices, max over i in [1,n], v of |Ball^r_{P_i}(v) / P_i|.
inline WidthReport definable_width(const Graph& g, const VertexOrder& order, int r,
                                   EvalMode mode = EvalMode::Auto, const RunConfig& cfg = {}) {
    const int n = g.size();
    order.validate(n);
    WidthReport rep;
    rep.variant = "dmw";
    rep.radius = r;
    rep.mode = WidthMode::Exact;
    for (int i = 1; i <= n; ++i) {
        Bitset s(n);
        for (int j = 0; j < n - i; ++j) s.set(order.order[j]);
        Partition p = atomic_types(g, s);
        auto balls = flip_balls(g, p, r, mode, cfg);
        if (!balls.exact) rep.mode = WidthMode::Upper;
        for (int v = 0; v < n; ++v)
            rep.value = std::max(rep.value, p.quotient_count(balls.balls[v]));
    }
    rep.order_witness = order;
    return rep;
}

inline WidthReport width_merge_report(const Graph& g, const MergeSequence& seq, int r) {
    WidthReport rep;
    rep.variant = "mw";
    rep.radius = r;
    rep.value = width_merge(g, seq, r);
    rep.mode = WidthMode::Exact;
    rep.merge_witness = seq;
    return rep;
}

inline WidthReport transient_width_report(const Graph& g, const TransientSequence& seq, int r) {
    WidthReport rep;
    rep.variant = "tmw";
    rep.radius = r;
    rep.value = transient_width(g, seq, r);
    rep.mode = WidthMode::Exact;
    rep.transient_witness = seq;
    return rep;
}

}  // namespace mw
