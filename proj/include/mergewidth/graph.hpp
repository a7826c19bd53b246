#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "util.hpp"

namespace mw {

/// Simple undirected graph over dense vertex ids 0..n-1, stored as bitset
/// adjacency rows. Symmetric, zero diagonal.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {}

    int size() const { return n_; }

    void add_edge(int u, int v) {
        assert(u != v);
        adj_[u].set(v);
        adj_[v].set(u);
    }
    void remove_edge(int u, int v) {
        adj_[u].reset(v);
        adj_[v].reset(u);
    }
    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    const Bitset& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return adj_[v].count(); }

    long edge_count() const {
        long c = 0;
        for (auto& row : adj_) c += row.count();
        return c / 2;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < n_; ++u)
            adj_[u].for_each([&](int v) { if (u < v) e.emplace_back(u, v); });
        return e;
    }

    Graph complement() const {
        Graph g(n_);
        for (int u = 0; u < n_; ++u) {
            g.adj_[u] = adj_[u].complemented();
            g.adj_[u].reset(u);
        }
        return g;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

    /// BFS distances from s, capped at `cap` steps (unreached => kInf).
    std::vector<int> distances_from(int s, int cap = kInf) const {
        std::vector<int> dist(n_, kInf);
        Bitset seen(n_), frontier(n_);
        seen.set(s);
        frontier.set(s);
        dist[s] = 0;
        for (int d = 1; d <= cap && !frontier.empty(); ++d) {
            Bitset next(n_);
            frontier.for_each([&](int u) { next |= adj_[u]; });
            next.and_not(seen);
            next.for_each([&](int v) { dist[v] = d; });
            seen |= next;
            frontier = std::move(next);
        }
        return dist;
    }

    int dist(int u, int v, int cap = kInf) const {
        if (u == v) return 0;
        return distances_from(u, cap)[v];
    }

    /// Radius-r ball around v.
    Bitset ball(int v, int r) const {
        Bitset cur(n_), frontier(n_);
        cur.set(v);
        frontier.set(v);
        for (int d = 0; d < r && !frontier.empty(); ++d) {
            Bitset next(n_);
            frontier.for_each([&](int u) { next |= adj_[u]; });
            next.and_not(cur);
            cur |= next;
            frontier = std::move(next);
        }
        return cur;
    }

    /// Diameter (kInf when disconnected; 0 for a single vertex).
    int diameter() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) {
            auto dist = distances_from(v);
            for (int u = 0; u < n_; ++u) d = std::max(d, dist[u]);
        }
        return d >= kInf ? kInf : d;
    }

    void set_row(int v, Bitset row) { adj_[v] = std::move(row); }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
};

/// Graph induced on a vertex subset, used for per-part diameter checks.
/// Distances are within the induced subgraph.
inline std::vector<int> induced_distances(const Graph& g, const Bitset& dom, int s) {
    const int n = g.size();
    std::vector<int> dist(n, kInf);
    Bitset seen(n), frontier(n);
    seen.set(s);
    frontier.set(s);
    dist[s] = 0;
    for (int d = 1; !frontier.empty(); ++d) {
        Bitset next(n);
        frontier.for_each([&](int u) { next |= g.neighbours(u); });
        next &= dom;
        next.and_not(seen);
        next.for_each([&](int v) { dist[v] = d; });
        seen |= next;
        frontier = std::move(next);
    }
    return dist;
}

inline int induced_diameter(const Graph& g, const Bitset& dom) {
    int d = 0;
    auto verts = dom.to_vector();
    for (int v : verts) {
        auto dist = induced_distances(g, dom, v);
        for (int u : verts) d = std::max(d, dist[u]);
    }
    return d >= kInf ? kInf : d;
}

}  // namespace mw
