#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "merge_seq.hpp"

namespace mw {

/// A graph bundled with whatever certificates the construction yields.
/// Every attached certificate is expected to verify.
struct CertifiedInstance {
    std::string name;
    Graph graph;
    std::optional<MergeSequence> merge;
    std::optional<TransientSequence> transient;
    std::optional<PartitionChain> chain;
    std::optional<VertexOrder> order;
    std::map<std::string, int> claimed_widths;
};

namespace detail {

inline int msb_index(uint32_t x) { return 31 - __builtin_clz(x); }

inline uint32_t reverse_bits(uint32_t v, int m) {
    uint32_t r = 0;
    for (int i = 0; i < m; ++i)
        if ((v >> i) & 1) r |= uint32_t{1} << (m - 1 - i);
    return r;
}

}  // namespace detail

/// Universal cograph C_m on 2^m leaves of the perfect binary tree of depth m;
/// leaves u != v adjacent iff their lowest common ancestor has odd depth.
/// Attaches the depth-level merge sequence, the transient sequence whose
/// flips isolate the previous level's parts, the bare partition chain, and
/// the transversal-prefix order (bit reversal).
inline CertifiedInstance universal_cograph(int m) {
    if (m < 1 || m > 12) throw BudgetError("universal_cograph: m must be in [1,12]");
    const int n = 1 << m;
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int lca_depth = m - 1 - detail::msb_index(uint32_t(u ^ v));
            if (lca_depth & 1) g.add_edge(u, v);
        }

    CertifiedInstance inst;
    inst.name = "cograph(" + std::to_string(m) + ")";
    inst.graph = g;

    // P_i groups leaves by their depth-(m+1-i) ancestor, i.e. by v >> (i-1).
    MergeSequence seq;
    std::vector<Partition> parts;
    for (int i = 1; i <= m + 1; ++i) {
        std::vector<int> label(n);
        for (int v = 0; v < n; ++v) label[v] = v >> (i - 1);
        parts.push_back(Partition::from_labels(n, label));
    }
    for (int i = 1; i <= m + 1; ++i) {
        ResolvedSet r(n);
        if (i >= 2) {
            // pairs within parts of P_{i-1}
            const Partition& prev = parts[i - 2];
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (prev.part_of(u) == prev.part_of(v)) r.add(u, v);
        }
        seq.steps.push_back({parts[i - 1], std::move(r)});
    }
    inst.merge = seq;

    // Transient flips: flip part pair (a,b) of P_i when the LCA of the two
    // ancestor nodes has odd depth (a == b allowed). The components of the
    // flipped graph are then exactly the parts of P_{i-1}.
    TransientSequence ts;
    for (int i = 1; i <= m + 1; ++i) {
        int depth = m + 1 - i;
        int np = parts[i - 1].count();
        FlipSpec f;
        for (int a = 0; a < np; ++a)
            for (int b = a; b < np; ++b) {
                int lca = (a == b) ? depth : depth - 1 - detail::msb_index(uint32_t(a ^ b));
                if (lca & 1) f.flipped.emplace_back(a, b);
            }
        TransientStep st;
        st.partition = parts[i - 1];
        st.flip = f;
        st.flipped = apply_flip(g, parts[i - 1], f);
        ts.steps.push_back(std::move(st));
    }
    inst.transient = ts;

    PartitionChain chain;
    chain.seq = parts;
    inst.chain = chain;

    VertexOrder order;
    for (int j = 0; j < n; ++j) order.order.push_back(int(detail::reverse_bits(uint32_t(j), m)));
    inst.order = order;

    inst.claimed_widths = {{"mw", 1}, {"tmw", 1}, {"pmw", 1}, {"dmw_upper", 2}};
    return inst;
}

/// Bipartite graph on two copies of Z_2^m with u ~ v iff u.v = 0 (mod 2).
/// Left side ids [0,2^m), right side ids [2^m, 2^{m+1}).
inline Graph vector_bipartite(int m) {
    if (m < 1 || m > 8) throw BudgetError("vector_bipartite: m must be in [1,8]");
    const int half = 1 << m;
    Graph g(2 * half);
    for (int u = 0; u < half; ++u)
        for (int v = 0; v < half; ++v)
            if (__builtin_popcount(uint32_t(u) & uint32_t(v)) % 2 == 0)
                g.add_edge(u, half + v);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline Graph empty_graph(int n) { return Graph(n); }

inline Graph grid_graph(int rows, int cols) {
    Graph g(rows * cols);
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
        }
    return g;
}

inline Graph gnp(int n, double p, uint64_t seed) {
    Rng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.unit() < p) g.add_edge(u, v);
    return g;
}

/// Random cubic graph by the pairing model, rejecting loops and multi-edges.
inline Graph random_cubic(int n, uint64_t seed) {
    if (n < 4 || (3 * n) % 2 != 0)
        throw InputError("cubic graph needs even 3n and n >= 4");
    Rng rng(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < 3; ++k) stubs.push_back(v);
        // Fisher-Yates with the deterministic rng
        for (int i = int(stubs.size()) - 1; i > 0; --i)
            std::swap(stubs[i], stubs[rng.below(i + 1)]);
        Graph g(n);
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || g.adjacent(u, v)) ok = false;
            else g.add_edge(u, v);
        }
        if (ok) return g;
    }
    throw InputError("cubic sampling failed to converge");
}

/// Left-to-right maximal chain: step t merges vertex t into the prefix part.
inline PartitionChain left_to_right_chain(int n) {
    PartitionChain chain;
    for (int t = 1; t <= n; ++t) {
        std::vector<int> label(n);
        for (int v = 0; v < n; ++v) label[v] = v < t ? 0 : v;
        chain.seq.push_back(Partition::from_labels(n, label));
    }
    return chain;
}

/// Deterministic random maximal chain: repeatedly merge a uniformly chosen
/// pair of parts.
inline PartitionChain random_maximal_chain(int n, uint64_t seed) {
    Rng rng(seed);
    PartitionChain chain;
    Partition p = Partition::singletons(n);
    chain.seq.push_back(p);
    while (p.count() > 1) {
        int a = rng.below(p.count());
        int b = rng.below(p.count() - 1);
        if (b >= a) ++b;
        p = p.merge_parts(std::min(a, b), std::max(a, b));
        chain.seq.push_back(p);
    }
    return chain;
}

/// Positive certificate for the path 0-1-...-(n-1): prefix merges resolving
/// only path edges. R_t holds the edges among the first t+1 vertices.
inline MergeSequence path_positive_certificate(int n) {
    Graph g = path_graph(n);
    MergeSequence seq;
    for (int t = 1; t <= n; ++t) {
        std::vector<int> label(g.size());
        for (int v = 0; v < g.size(); ++v) label[v] = v < t ? 0 : v;
        ResolvedSet r(g.size());
        for (int i = 0; i + 1 < std::min(t + 1, n); ++i) r.add(i, i + 1);
        seq.steps.push_back({Partition::from_labels(g.size(), label), std::move(r)});
    }
    return seq;
}

/// Positive certificate for K_{a,b} (left ids [0,a)): merge each side, then
/// the two sides; all cross edges get resolved before the final merge.
inline std::pair<Graph, MergeSequence> biclique_positive_certificate(int a, int b) {
    const int n = a + b;
    Graph g(n);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < n; ++v) g.add_edge(u, v);
    MergeSequence seq;
    Partition p = Partition::singletons(n);
    seq.steps.push_back({p, ResolvedSet(n)});
    auto side_label = [&](int upto_left, int upto_right) {
        std::vector<int> label(n);
        for (int v = 0; v < n; ++v) {
            if (v < a) label[v] = v < upto_left ? 0 : v;
            else label[v] = v < a + upto_right ? n : v;
        }
        return Partition::from_labels(n, label);
    };
    for (int t = 2; t <= a; ++t) seq.steps.push_back({side_label(t, 1), ResolvedSet(n)});
    for (int t = 2; t <= b; ++t) seq.steps.push_back({side_label(a, t), ResolvedSet(n)});
    ResolvedSet all_edges(n);
    all_edges.add_edges_of(g);
    seq.steps.push_back({Partition::whole(n), std::move(all_edges)});
    return {g, seq};
}

}  // namespace mw
