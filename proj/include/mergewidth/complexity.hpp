#pragma once

#include <functional>
#include <set>
#include <vector>

#include "config.hpp"
#include "graph.hpp"

namespace mw {

namespace detail {

/// Distinct neighbourhood traces {N(v) ∩ A : v in V}.
inline int trace_count(const Graph& g, const Bitset& a) {
    std::set<std::vector<uint64_t>> traces;
    for (int v = 0; v < g.size(); ++v)
        traces.insert((g.neighbours(v) & a).words());
    return int(traces.size());
}

template <class F>
void for_each_subset_of_size(int n, int k, F f) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (int v = start; v <= n - (k - depth); ++v) {
            idx[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace detail

struct ComplexityResult {
    int value = 0;
    bool exact = false;  // greedy mode is a lower bound
};

enum class ComplexityMode { Exact, GreedyLower, Auto };

/// Neighbourhood complexity pi_G(m): max over |A| <= m of the number of
/// distinct traces N(v) ∩ A. Exact mode enumerates all subsets of size
/// min(m, n) (the maximum is attained there since traces only merge when
/// vertices are dropped); greedy mode grows A one vertex at a time.
inline ComplexityResult neighbourhood_complexity(const Graph& g, int m,
                                                 ComplexityMode mode = ComplexityMode::Auto,
                                                 const RunConfig& cfg = {}) {
    const int n = g.size();
    const int k = std::min(m, n);
    bool feasible = k <= cfg.pi_exact_m && n <= cfg.pi_exact_n;
    if (mode == ComplexityMode::Exact && !feasible)
        throw BudgetError("exact neighbourhood complexity beyond budget");
    ComplexityResult res;
    if (mode != ComplexityMode::GreedyLower && feasible) {
        res.exact = true;
        detail::for_each_subset_of_size(n, k, [&](const std::vector<int>& idx) {
            Bitset a(n);
            for (int v : idx) a.set(v);
            res.value = std::max(res.value, detail::trace_count(g, a));
        });
        return res;
    }
    // greedy lower bound: repeatedly add the vertex maximizing the trace count
    res.exact = false;
    Bitset a(n);
    res.value = detail::trace_count(g, a);
    for (int step = 0; step < k; ++step) {
        int best_v = -1, best = -1;
        for (int v = 0; v < n; ++v) {
            if (a.test(v)) continue;
            a.set(v);
            int c = detail::trace_count(g, a);
            a.reset(v);
            if (c > best) {
                best = c;
                best_v = v;
            }
        }
        if (best_v < 0) break;
        a.set(best_v);
        res.value = std::max(res.value, best);
    }
    return res;
}

inline bool is_shattered(const Graph& g, const Bitset& a) {
    const int k = a.count();
    if (k > 30) return false;
    std::set<std::vector<uint64_t>> traces;
    for (int v = 0; v < g.size(); ++v)
        traces.insert((g.neighbours(v) & a).words());
    return int(traces.size()) == (1 << k);
}

/// Exact VC-dimension within the budget (shattering is downward closed, so
/// levels are scanned until one has no shattered set); greedy witness growth
/// above budget, tagged as a lower bound.
inline ComplexityResult vc_dimension(const Graph& g,
                                     ComplexityMode mode = ComplexityMode::Auto,
                                     const RunConfig& cfg = {}) {
    const int n = g.size();
    bool feasible = n <= cfg.vc_budget;
    if (mode == ComplexityMode::Exact && !feasible)
        throw BudgetError("exact VC-dimension beyond budget");
    ComplexityResult res;
    if (mode != ComplexityMode::GreedyLower && feasible) {
        res.exact = true;
        for (int d = 1; d <= n; ++d) {
            bool found = false;
            detail::for_each_subset_of_size(n, d, [&](const std::vector<int>& idx) {
                if (found) return;
                Bitset a(n);
                for (int v : idx) a.set(v);
                if (is_shattered(g, a)) found = true;
            });
            if (!found) break;
            res.value = d;
        }
        return res;
    }
    res.exact = false;
    Bitset a(n);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int v = 0; v < n && !grew; ++v) {
            if (a.test(v)) continue;
            a.set(v);
            if (is_shattered(g, a)) grew = true;
            else a.reset(v);
        }
    }
    res.value = a.count();
    return res;
}

}  // namespace mw
