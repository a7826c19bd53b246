#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "width.hpp"

namespace mw {

enum class Variant { MW, TMW, PMW, DMW };

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::MW: return "mw";
        case Variant::TMW: return "tmw";
        case Variant::PMW: return "pmw";
        case Variant::DMW: return "dmw";
    }
    return "?";
}

namespace detail {

inline int vpair_index(int u, int v) {  // u < v
    return v * (v - 1) / 2 + u;
}

inline ResolvedSet resolved_from_mask(int n, uint64_t mask) {
    ResolvedSet r(n);
    for (int v = 0; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if ((mask >> vpair_index(u, v)) & 1) r.add(u, v);
    return r;
}

/// Exhaustive merge-width search. Explores maximal chains with the two
/// minimal per-pair resolution choices, memoized on (partition, R) states;
/// both restrictions are width-preserving (canonicalization and
/// R-monotonicity of balls).
class MwSearch {
public:
    MwSearch(const Graph& g, int r) : g_(g), r_(r), n_(g.size()) {}

    int solve() { return value(Partition::singletons(n_), 0); }

    MergeSequence witness() {
        MergeSequence seq;
        Partition p = Partition::singletons(n_);
        uint64_t rmask = 0;
        seq.steps.push_back({p, resolved_from_mask(n_, rmask)});
        while (p.count() > 1) {
            int target = value(p, rmask);
            bool moved = false;
            for (auto& [np, nmask, w] : transitions(p, rmask)) {
                if (std::max(w, value(np, nmask)) == target) {
                    seq.steps.push_back({np, resolved_from_mask(n_, nmask)});
                    p = np;
                    rmask = nmask;
                    moved = true;
                    break;
                }
            }
            if (!moved) throw std::logic_error("mw witness reconstruction failed");
        }
        return seq;
    }

private:
    struct Transition {
        Partition partition;
        uint64_t rmask;
        int width_term;
    };

    int value(const Partition& p, uint64_t rmask) {
        if (p.count() == 1) return 0;
        auto key = std::make_pair(p.key(), rmask);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        memo_[key] = kInf;  // cycle guard; states strictly coarsen so unused
        int best = kInf;
        for (auto& t : transitions(p, rmask))
            best = std::min(best, std::max(t.width_term, value(t.partition, t.rmask)));
        memo_[key] = best;
        return best;
    }

    // Enumerates merges of two parts with every minimal resolution choice,
    // in deterministic order.
    std::vector<Transition> transitions(const Partition& p, uint64_t rmask) {
        std::vector<Transition> out;
        for (int a = 0; a < p.count(); ++a) {
            for (int b = a + 1; b < p.count(); ++b) {
                Partition merged = p.merge_parts(a, b);
                Bitset cpart = p.part(a) | p.part(b);
                // part pairs of `merged` that may have lost homogeneity all
                // involve the merged part
                std::vector<std::pair<uint64_t, uint64_t>> choices;  // (edges, nonedges)
                for (int d = 0; d < merged.count(); ++d) {
                    uint64_t e = 0, ne = 0;
                    pair_masks(cpart, merged.part(d), rmask, e, ne);
                    if (e && ne) choices.emplace_back(e, ne);
                }
                int k = int(choices.size());
                for (int sel = 0; sel < (1 << k); ++sel) {
                    uint64_t nmask = rmask;
                    for (int i = 0; i < k; ++i)
                        nmask |= ((sel >> i) & 1) ? choices[i].second : choices[i].first;
                    Transition t{merged, nmask, width_term(p, nmask)};
                    out.push_back(std::move(t));
                }
            }
        }
        return out;
    }

    // unresolved edge / non-edge pair masks between parts A and B (A==B ok)
    void pair_masks(const Bitset& pa, const Bitset& pb, uint64_t rmask,
                    uint64_t& edges, uint64_t& nonedges) const {
        pa.for_each([&](int u) {
            pb.for_each([&](int v) {
                if (u >= v) return;
                int idx = vpair_index(u, v);
                if ((rmask >> idx) & 1) return;
                if (g_.adjacent(u, v)) edges |= uint64_t{1} << idx;
                else nonedges |= uint64_t{1} << idx;
            });
        });
        // for distinct parts also scan pairs with u in B, v in A
        if (!(pa == pb)) {
            pb.for_each([&](int u) {
                pa.for_each([&](int v) {
                    if (u >= v) return;
                    int idx = vpair_index(u, v);
                    if ((rmask >> idx) & 1) return;
                    if (g_.adjacent(u, v)) edges |= uint64_t{1} << idx;
                    else nonedges |= uint64_t{1} << idx;
                });
            });
        }
    }

    int width_term(const Partition& p, uint64_t rmask) {
        auto key = std::make_pair(p.key(), rmask);
        auto it = term_memo_.find(key);
        if (it != term_memo_.end()) return it->second;
        ResolvedSet rs = resolved_from_mask(n_, rmask);
        int w = 0;
        for (int v = 0; v < n_; ++v) w = std::max(w, p.quotient_count(rs.ball(v, r_)));
        term_memo_[key] = w;
        return w;
    }

    const Graph& g_;
    int r_, n_;
    std::map<std::pair<std::string, uint64_t>, int> memo_;
    std::map<std::pair<std::string, uint64_t>, int> term_memo_;
};

/// All partitions coarser than p (excluding p itself).
inline std::vector<Partition> coarsenings(const Partition& p) {
    std::set<std::string> seen;
    std::vector<Partition> frontier{p}, out;
    seen.insert(p.key());
    for (size_t i = 0; i < frontier.size(); ++i) {
        Partition cur = frontier[i];
        for (int a = 0; a < cur.count(); ++a)
            for (int b = a + 1; b < cur.count(); ++b) {
                Partition m = cur.merge_parts(a, b);
                if (seen.insert(m.key()).second) {
                    frontier.push_back(m);
                    out.push_back(m);
                }
            }
    }
    return out;
}

}  // namespace detail

/// Unrestricted exact merge-width for tiny graphs: arbitrary coarsening steps
/// and arbitrary homogeneity-preserving resolved supersets. Exists purely to
/// cross-check the maximal-chain/minimal-resolution search.
inline int exact_mw_unrestricted(const Graph& g, int r) {
    const int n = g.size();
    if (n > 4) throw BudgetError("unrestricted mw search limited to n <= 4");
    const int npairs = n * (n - 1) / 2;
    std::map<std::pair<std::string, uint64_t>, int> memo;

    std::function<int(const Partition&, uint64_t)> value = [&](const Partition& p,
                                                               uint64_t rmask) -> int {
        if (p.count() == 1) return 0;
        auto key = std::make_pair(p.key(), rmask);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        memo[key] = kInf;
        int best = kInf;
        for (const Partition& np : detail::coarsenings(p)) {
            uint64_t missing = ((npairs == 64 ? ~uint64_t{0} : (uint64_t{1} << npairs) - 1)) & ~rmask;
            // iterate supersets of rmask
            for (uint64_t add = missing;; add = (add - 1) & missing) {
                uint64_t nmask = rmask | add;
                ResolvedSet rs = detail::resolved_from_mask(n, nmask);
                if (homogeneous_modulo(g, np, rs).ok) {
                    int w = 0;
                    for (int v = 0; v < n; ++v)
                        w = std::max(w, p.quotient_count(rs.ball(v, r)));
                    best = std::min(best, std::max(w, value(np, nmask)));
                }
                if (add == 0) break;
            }
        }
        memo[key] = best;
        return best;
    };
    return value(Partition::singletons(n), 0);
}

namespace detail {

/// Shared skeleton for pmw/tmw: DFS over maximal chains with a per-step cost.
template <class StepCost>
int chain_bottleneck(const Graph& g, StepCost cost,
                     std::vector<std::pair<Partition, Partition>>* witness_chain = nullptr) {
    const int n = g.size();
    std::map<std::string, int> memo;
    std::function<int(const Partition&)> value = [&](const Partition& p) -> int {
        if (p.count() == 1) return 0;
        auto it = memo.find(p.key());
        if (it != memo.end()) return it->second;
        memo[p.key()] = kInf;
        int best = kInf;
        for (int a = 0; a < p.count(); ++a)
            for (int b = a + 1; b < p.count(); ++b) {
                Partition np = p.merge_parts(a, b);
                best = std::min(best, std::max(cost(p, np), value(np)));
            }
        memo[p.key()] = best;
        return best;
    };
    Partition start = Partition::singletons(n);
    int result = value(start);
    if (witness_chain) {
        Partition p = start;
        while (p.count() > 1) {
            bool moved = false;
            for (int a = 0; a < p.count() && !moved; ++a)
                for (int b = a + 1; b < p.count() && !moved; ++b) {
                    Partition np = p.merge_parts(a, b);
                    if (std::max(cost(p, np), value(np)) == value(p)) {
                        witness_chain->emplace_back(p, np);
                        p = np;
                        moved = true;
                    }
                }
            if (!moved) throw std::logic_error("chain witness reconstruction failed");
        }
    }
    return result;
}

}  // namespace detail

/// Exact width oracles for tiny graphs (budget cfg.oracle_budget).
inline WidthReport exact_width(const Graph& g, Variant variant, int r,
                               const RunConfig& cfg = {}) {
    const int n = g.size();
    if (n > cfg.oracle_budget)
        throw BudgetError("exact_width: n exceeds oracle budget");
    if (n * (n - 1) / 2 > 60) throw BudgetError("exact_width: resolved-mask overflow");

    WidthReport rep;
    rep.variant = to_string(variant);
    rep.radius = r;
    rep.mode = WidthMode::Exact;
    RunConfig exact_cfg = cfg;
    exact_cfg.flip_exact_cap = std::max(cfg.flip_exact_cap, n);

    switch (variant) {
        case Variant::MW: {
            detail::MwSearch search(g, r);
            rep.value = search.solve();
            rep.merge_witness = search.witness();
            break;
        }
        case Variant::PMW: {
            std::map<std::string, std::vector<Bitset>> ball_cache;
            auto balls_of = [&](const Partition& p) -> const std::vector<Bitset>& {
                auto it = ball_cache.find(p.key());
                if (it == ball_cache.end())
                    it = ball_cache.emplace(p.key(),
                                            flip_balls(g, p, r, EvalMode::Exact, exact_cfg).balls)
                             .first;
                return it->second;
            };
            auto cost = [&](const Partition& p, const Partition& np) {
                const auto& balls = balls_of(np);
                int w = 0;
                for (int v = 0; v < n; ++v) w = std::max(w, p.quotient_count(balls[v]));
                return w;
            };
            std::vector<std::pair<Partition, Partition>> steps;
            rep.value = detail::chain_bottleneck(g, cost, &steps);
            PartitionChain chain;
            chain.seq.push_back(Partition::singletons(n));
            for (auto& [p, np] : steps) chain.seq.push_back(np);
            rep.chain_witness = chain;
            break;
        }
        case Variant::TMW: {
            // per step, the flip of P_{t+1} is minimized independently
            std::map<std::pair<std::string, std::string>, std::pair<int, FlipSpec>> cache;
            auto cost_flip = [&](const Partition& p, const Partition& np) {
                auto key = std::make_pair(p.key(), np.key());
                auto it = cache.find(key);
                if (it != cache.end()) return it->second;
                int best = kInf;
                FlipSpec best_spec;
                const long bits = detail::flip_pair_bits(np.count());
                for (uint64_t code = 0; code < (uint64_t{1} << bits); ++code) {
                    FlipSpec f = detail::spec_from_code(code, np.count());
                    Graph h = apply_flip(g, np, f);
                    int w = 0;
                    for (int v = 0; v < n; ++v)
                        w = std::max(w, p.quotient_count(h.ball(v, r)));
                    if (w < best) {
                        best = w;
                        best_spec = f;
                    }
                }
                return cache[key] = {best, best_spec};
            };
            auto cost = [&](const Partition& p, const Partition& np) {
                return cost_flip(p, np).first;
            };
            std::vector<std::pair<Partition, Partition>> steps;
            rep.value = detail::chain_bottleneck(g, cost, &steps);
            TransientSequence ts;
            TransientStep first;
            first.partition = Partition::singletons(n);
            first.flipped = g;  // G_1 carries no width term; the identity flip works
            ts.steps.push_back(first);
            for (auto& [p, np] : steps) {
                TransientStep st;
                st.partition = np;
                st.flip = cost_flip(p, np).second;
                st.flipped = apply_flip(g, np, st.flip);
                ts.steps.push_back(std::move(st));
            }
            rep.transient_witness = ts;
            break;
        }
        case Variant::DMW: {
            // bottleneck DP over the subset lattice; prefixes of an order are
            // exactly the chains from the empty set
            const uint32_t full = (n == 32) ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);
            auto term = [&](uint32_t smask) {
                Bitset s(n);
                for (int v = 0; v < n; ++v)
                    if ((smask >> v) & 1) s.set(v);
                Partition p = atomic_types(g, s);
                auto balls = flip_balls(g, p, r, EvalMode::Exact, exact_cfg).balls;
                int w = 0;
                for (int v = 0; v < n; ++v) w = std::max(w, p.quotient_count(balls[v]));
                return w;
            };
            std::vector<int> best(size_t{1} << n, kInf), terms(size_t{1} << n, 0);
            for (uint32_t s = 0; s < full; ++s) terms[s] = term(s);
            best[0] = terms[0];
            for (uint32_t s = 1; s < full; ++s) {
                int b = kInf;
                for (int v = 0; v < n; ++v)
                    if ((s >> v) & 1) b = std::min(b, best[s ^ (uint32_t{1} << v)]);
                best[s] = std::max(b, terms[s]);
            }
            int bestv = kInf;
            uint32_t best_top = 0;
            for (int v = 0; v < n; ++v) {
                uint32_t t = full ^ (uint32_t{1} << v);
                if (best[t] < bestv) {
                    bestv = best[t];
                    best_top = t;
                }
            }
            rep.value = bestv;
            // walk the chain backwards to recover the insertion order
            std::vector<int> insertion;
            uint32_t cur = best_top;
            while (cur) {
                bool moved = false;
                for (int v = 0; v < n && !moved; ++v) {
                    if (!((cur >> v) & 1)) continue;
                    uint32_t prev = cur ^ (uint32_t{1} << v);
                    if (std::max(best[prev], terms[cur]) == best[cur]) {
                        insertion.push_back(v);
                        cur = prev;
                        moved = true;
                    }
                }
                if (!moved) throw std::logic_error("dmw witness reconstruction failed");
            }
            std::reverse(insertion.begin(), insertion.end());
            insertion.push_back(__builtin_ctz(full ^ best_top));  // placed last
            VertexOrder vo;
            vo.order = insertion;
            rep.order_witness = vo;
            break;
        }
    }
    return rep;
}

/// Radius-infinity evaluation: all variants stabilize at r = n-1.
inline WidthReport infinite_radius(const Graph& g, Variant variant, const RunConfig& cfg = {}) {
    int r = std::max(0, g.size() - 1);
    WidthReport rep = exact_width(g, variant, r, cfg);
    rep.radius = kInf;
    return rep;
}

/// All graphs on exactly n vertices up to isomorphism (n <= 6), each as the
/// lexicographically smallest adjacency mask representative.
inline std::vector<Graph> canonical_graphs(int n) {
    if (n > 6) throw BudgetError("canonical_graphs limited to n <= 6");
    const int npairs = n * (n - 1) / 2;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));

    auto pair_bit = [&](int u, int v) {
        if (u > v) std::swap(u, v);
        return detail::vpair_index(u, v);
    };
    std::set<uint64_t> canon;
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (uint64_t{1} << npairs); ++mask) {
        uint64_t best = ~uint64_t{0};
        for (auto& pm : perms) {
            uint64_t img = 0;
            for (int v = 0; v < n; ++v)
                for (int u = 0; u < v; ++u)
                    if ((mask >> detail::vpair_index(u, v)) & 1)
                        img |= uint64_t{1} << pair_bit(pm[u], pm[v]);
            best = std::min(best, img);
        }
        if (best != mask || !canon.insert(best).second) continue;
        Graph g(n);
        for (int v = 0; v < n; ++v)
            for (int u = 0; u < v; ++u)
                if ((mask >> detail::vpair_index(u, v)) & 1) g.add_edge(u, v);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace mw
