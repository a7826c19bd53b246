#pragma once

#include <array>
#include <utility>
#include <vector>

#include "merge_seq.hpp"

namespace mw {

enum class Side { Graph, Complement };

/// Every graph has diameter <= 3 on at least one side; returns such a side,
/// preferring the graph itself on ties.
inline std::pair<Side, int> diameter_side(const Graph& g) {
    if (g.size() <= 1) return {Side::Graph, 0};
    int dg = g.diameter();
    if (dg <= 3) return {Side::Graph, dg};
    int dc = g.complement().diameter();
    if (dc > 3) throw std::logic_error("diameter dichotomy violated");
    return {Side::Complement, dc};
}

namespace detail {

/// BFS distances inside the bipartite graph on (X, Y) whose edges are the
/// cross pairs of `rows` (rows already restricted to the opposite side).
inline std::vector<int> bip_distances(int n, const std::vector<Bitset>& rows,
                                      const Bitset& dom, int s) {
    std::vector<int> dist(n, kInf);
    Bitset seen(n), frontier(n);
    seen.set(s);
    frontier.set(s);
    dist[s] = 0;
    for (int d = 1; !frontier.empty(); ++d) {
        Bitset next(n);
        frontier.for_each([&](int u) { next |= rows[u]; });
        next &= dom;
        next.and_not(seen);
        next.for_each([&](int v) { dist[v] = d; });
        seen |= next;
        frontier = std::move(next);
    }
    return dist;
}

inline int bip_diameter(int n, const std::vector<Bitset>& rows, const Bitset& dom) {
    int d = 0;
    auto verts = dom.to_vector();
    for (int v : verts) {
        auto dist = bip_distances(n, rows, dom, v);
        for (int u : verts) d = std::max(d, dist[u]);
    }
    return d >= kInf ? kInf : d;
}

}  // namespace detail

struct BipartiteFlipResult {
    int case_tag = 0;  // 1: diam(B)<=6; 2: diam of bipartite complement <= 6;
                       // 3: homogeneous quadrant pattern (two bicliques);
                       // 4: dominating + isolated vertex pattern
    Graph flipped;     // only X-Y cross edges; rest of the graph untouched
};

/// Appendix flip construction for one bipartite block. X, Y are disjoint
/// nonempty vertex sets, x in X and y in Y the transversal picks. The output
/// is an {X+,X-,Y+,Y-}-flip of G[X,Y] in which every edge uv satisfies
/// dist <= 6 in both G[X,Y] and its bipartite complement.
inline BipartiteFlipResult bipartite_flip_case(const Graph& g, const Bitset& xs,
                                               const Bitset& ys, int x, int y) {
    const int n = g.size();
    BipartiteFlipResult res;
    res.flipped = Graph(n);
    if (xs.empty() || ys.empty()) {
        res.case_tag = 1;
        return res;  // no cross pairs; edgeless block
    }
    if (!xs.test(x) || !ys.test(y)) throw InputError("bipartite_flip_case: x,y not in X,Y");

    Bitset dom = xs | ys;
    std::vector<Bitset> rows(n, Bitset(n)), corows(n, Bitset(n));
    auto cross_rows = [&](bool complemented) {
        std::vector<Bitset> rr(n, Bitset(n));
        xs.for_each([&](int u) {
            rr[u] = complemented ? ys.minus(g.neighbours(u)) : (g.neighbours(u) & ys);
        });
        ys.for_each([&](int u) {
            rr[u] = complemented ? xs.minus(g.neighbours(u)) : (g.neighbours(u) & xs);
        });
        return rr;
    };
    rows = cross_rows(false);
    corows = cross_rows(true);

    Bitset xp = g.neighbours(y) & xs, xm = xs.minus(g.neighbours(y));
    Bitset yp = g.neighbours(x) & ys, ym = ys.minus(g.neighbours(x));

    auto emit = [&](const std::vector<Bitset>& rr) {
        xs.for_each([&](int u) {
            rr[u].for_each([&](int v) { res.flipped.add_edge(u, v); });
        });
    };

    if (detail::bip_diameter(n, rows, dom) <= 6) {
        res.case_tag = 1;
        emit(corows);  // flip all four quadrants: the bipartite complement
        return res;
    }
    if (detail::bip_diameter(n, corows, dom) <= 6) {
        res.case_tag = 2;
        emit(rows);  // keep the block as is
        return res;
    }

    // homogeneous quadrant pattern: flip the complete quadrants, leaving the
    // block edgeless
    auto quadrant_state = [&](const Bitset& a, const Bitset& b, bool& complete, bool& anti) {
        complete = anti = true;
        a.for_each([&](int u) {
            Bitset hit = g.neighbours(u) & b;
            if (hit != b) complete = false;
            if (!hit.empty()) anti = false;
        });
        if (a.empty() || b.empty()) complete = anti = true;
    };
    bool homog = true;
    for (auto [a, b] : {std::pair{&xp, &yp}, {&xp, &ym}, {&xm, &yp}, {&xm, &ym}}) {
        bool complete = false, anti = false;
        quadrant_state(*a, *b, complete, anti);
        if (!complete && !anti) homog = false;
    }
    if (homog) {
        res.case_tag = 3;
        return res;  // edgeless block
    }

    // dominating + isolated pattern
    auto find_pattern = [&](const Bitset& side, const Bitset& other, int& dominating,
                            int& isolated) {
        dominating = isolated = -1;
        side.for_each([&](int u) {
            Bitset hit = g.neighbours(u) & other;
            if (dominating < 0 && hit == other) dominating = u;
            if (isolated < 0 && hit.empty()) isolated = u;
        });
        return dominating >= 0 && isolated >= 0;
    };
    int dom_v = -1, iso_v = -1;
    if (find_pattern(xs, ys, dom_v, iso_v)) {
        res.case_tag = 4;
        // flip between X+ and Y
        xs.for_each([&](int u) {
            const Bitset& rr = xp.test(u) ? corows[u] : rows[u];
            rr.for_each([&](int v) { res.flipped.add_edge(u, v); });
        });
        return res;
    }
    if (find_pattern(ys, xs, dom_v, iso_v)) {
        res.case_tag = 4;
        // symmetric: flip between Y+ and X
        xs.for_each([&](int u) {
            Bitset keep = rows[u].minus(yp);
            Bitset flip = corows[u] & yp;
            keep.for_each([&](int v) { res.flipped.add_edge(u, v); });
            flip.for_each([&](int v) { res.flipped.add_edge(u, v); });
        });
        return res;
    }
    throw std::logic_error("bipartite flip case analysis exhausted");
}

/// Local flip of Lemma-5.2 shape: refine P by the transversal S and assemble
/// a P'-flip G' in which every edge has flip distance at most 6 with respect
/// to P. Per part the denser side is complemented; per part pair the
/// bipartite case analysis applies.
inline std::pair<Partition, Graph> local_flip(const Graph& g, const Partition& p,
                                              const Bitset& s) {
    const int n = g.size();
    for (int a = 0; a < p.count(); ++a)
        if ((s & p.part(a)).count() != 1)
            throw InputError("local_flip: S is not a transversal of P");

    Partition refined = s_refinement(g, p, s);
    Graph out(n);

    Graph co = g.complement();
    for (int a = 0; a < p.count(); ++a) {
        const Bitset& part = p.part(a);
        bool flip_inside = induced_diameter(g, part) <= 3;
        part.for_each([&](int u) {
            Bitset row = flip_inside ? (co.neighbours(u) & part) : (g.neighbours(u) & part);
            row.for_each([&](int v) { if (u < v) out.add_edge(u, v); });
        });
    }
    for (int a = 0; a < p.count(); ++a)
        for (int b = a + 1; b < p.count(); ++b) {
            int x = (s & p.part(a)).find_first();
            int y = (s & p.part(b)).find_first();
            auto bip = bipartite_flip_case(g, p.part(a), p.part(b), x, y);
            for (auto [u, v] : bip.flipped.edges()) out.add_edge(u, v);
        }
    return {std::move(refined), std::move(out)};
}

/// Nested transversals for a chain, coarse to fine: each part keeps the
/// representative of its superpart when it contains it, minimum vertex
/// otherwise.
inline std::vector<Bitset> nested_transversals(const PartitionChain& chain) {
    const int m = chain.length();
    const int n = chain.seq.front().n();
    std::vector<Bitset> out(m, Bitset(n));
    for (int i = m - 1; i >= 0; --i) {
        const Partition& p = chain.seq[i];
        for (int a = 0; a < p.count(); ++a) {
            int rep = -1;
            if (i + 1 < m) {
                Bitset carried = out[i + 1] & p.part(a);
                rep = carried.find_first();
            }
            if (rep < 0) rep = p.part(a).find_first();
            out[i].set(rep);
        }
    }
    return out;
}

/// Partition chain to 6-firm merge sequence (the pmw -> mw conversion):
/// S-refinements along nested transversals, with R_i accumulating the edges
/// of the per-step local flips.
inline MergeSequence chain_to_merge(const Graph& g, const PartitionChain& chain) {
    chain.validate();
    auto trans = nested_transversals(chain);
    MergeSequence seq;
    ResolvedSet acc(g.size());
    for (int i = 0; i < chain.length(); ++i) {
        auto [refined, flipped] = local_flip(g, chain.seq[i], trans[i]);
        acc.add_edges_of(flipped);
        seq.steps.push_back({std::move(refined), acc});
    }
    return seq;
}

enum class PartClass { Small, Medium, Large };

inline const char* to_string(PartClass c) {
    switch (c) {
        case PartClass::Small: return "small";
        case PartClass::Medium: return "medium";
        case PartClass::Large: return "large";
    }
    return "?";
}

struct PartClassification {
    PartClass cls = PartClass::Small;
    std::vector<int> witnesses;
};

/// Greedy witness search: x1, then x2 at dist_R > t, then x3 at dist_R > s
/// from both. One of t-small / (s,t)-medium / s-large always holds.
inline PartClassification classify_part(const ResolvedSet& r, const Bitset& x, int s, int t) {
    if (s > t) throw InputError("classify_part requires s <= t");
    if (x.empty()) throw InputError("classify_part: empty part");
    PartClassification out;
    int x1 = x.find_first();
    out.witnesses.push_back(x1);
    Bitset far1 = x.minus(r.ball(x1, t));
    int x2 = far1.find_first();
    if (x2 < 0) {
        out.cls = PartClass::Small;
        return out;
    }
    out.witnesses.push_back(x2);
    Bitset far2 = x.minus(r.ball(x1, s)).minus(r.ball(x2, s));
    int x3 = far2.find_first();
    if (x3 < 0) {
        out.cls = PartClass::Medium;
        return out;
    }
    out.witnesses.push_back(x3);
    out.cls = PartClass::Large;
    return out;
}

namespace detail {

// covered_by(u): vertices of `target` that u dominates (anti=false) or
// anti-dominates (anti=true)
inline Bitset dual_cover(const Graph& g, int u, const Bitset& target, bool anti) {
    if (!anti) return g.neighbours(u) & target;
    Bitset non = g.neighbours(u).complemented();
    non.reset(u);
    return non & target;
}

// Greedy set cover of `target` from `from` on top of already-chosen
// `existing`, reverse-deleted to an inclusion-minimal addition.
inline std::optional<Bitset> dual_direction(const Graph& g, const Bitset& from,
                                            const Bitset& target, bool anti,
                                            const Bitset& existing) {
    const int n = target.universe();
    Bitset uncovered = target;
    (existing & from).for_each([&](int u) { uncovered.and_not(dual_cover(g, u, target, anti)); });
    Bitset chosen(n);
    std::vector<int> order;
    while (!uncovered.empty()) {
        int best = -1, gain = 0;
        from.for_each([&](int u) {
            if (chosen.test(u) || existing.test(u)) return;
            int c = (dual_cover(g, u, target, anti) & uncovered).count();
            if (c > gain) {
                gain = c;
                best = u;
            }
        });
        if (best < 0) return std::nullopt;  // direction infeasible
        chosen.set(best);
        order.push_back(best);
        uncovered.and_not(dual_cover(g, best, target, anti));
    }
    // single reverse-deletion pass for inclusion-minimality of the addition
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        chosen.reset(*it);
        Bitset cov(n);
        (chosen | (existing & from)).for_each([&](int u) { cov |= dual_cover(g, u, target, anti); });
        if (!target.is_subset_of(cov)) chosen.set(*it);
    }
    return chosen;
}

}  // namespace detail

/// Smallest of: greedy dominating set of Y inside X, greedy anti-dominating
/// set of X inside Y; pruned to inclusion-minimal by a reverse-deletion pass.
/// Pairs with no cross pairs (X or Y empty, or X == Y a singleton) get the
/// empty dual.
inline Bitset greedy_dual(const Graph& g, const Bitset& xs, const Bitset& ys) {
    const int n = g.size();
    bool no_pairs = xs.empty() || ys.empty() || (xs == ys && xs.count() == 1);
    if (no_pairs) return Bitset(n);

    Bitset none(n);
    auto dominating = detail::dual_direction(g, xs, ys, false, none);
    auto antidom = detail::dual_direction(g, ys, xs, true, none);
    if (!dominating && !antidom) throw std::logic_error("no dual in either direction");
    if (!dominating) return *antidom;
    if (!antidom) return *dominating;
    return dominating->count() <= antidom->count() ? *dominating : *antidom;
}

/// Minimal batch extending `existing` so that it contains a dual for (X,Y).
inline Bitset greedy_dual_extension(const Graph& g, const Bitset& xs, const Bitset& ys,
                                    const Bitset& existing) {
    auto dominating = detail::dual_direction(g, xs, ys, false, existing);
    auto antidom = detail::dual_direction(g, ys, xs, true, existing);
    if (!dominating && !antidom) throw std::logic_error("no dual extension in either direction");
    if (!dominating) return *antidom;
    if (!antidom) return *dominating;
    return dominating->count() <= antidom->count() ? *dominating : *antidom;
}

/// S-flip of Lemma-6.3 shape: flip every atomic-type part pair whose far
/// pairs (dist_R > 2t+1) are edges. For a valid (2,t)-sample set this yields
/// Ball^r_{G'}(v) ⊆ Ball^{(2t+1)r}_R(v).
inline Graph incremental_flip(const Graph& g, const Bitset& s, const ResolvedSet& r, int t) {
    const int n = g.size();
    Partition p = atomic_types(g, s);
    std::vector<Bitset> far_ball(n);
    for (int v = 0; v < n; ++v) far_ball[v] = r.ball(v, 2 * t + 1);
    FlipSpec spec;
    for (int a = 0; a < p.count(); ++a)
        for (int b = a; b < p.count(); ++b) {
            bool any_far = false, all_edges = true;
            p.part(a).for_each([&](int u) {
                Bitset far = p.part(b).minus(far_ball[u]);
                far.reset(u);
                if (!far.empty()) {
                    any_far = true;
                    if (!far.is_subset_of(g.neighbours(u))) all_edges = false;
                }
            });
            if (any_far && all_edges) spec.flipped.emplace_back(a, b);
        }
    return apply_flip(g, p, spec);
}

struct SamplePartInfo {
    PartClass cls = PartClass::Small;
    std::vector<int> witnesses;
    Bitset half1, half2;  // set for medium parts only
};

struct SampleStep {
    int step = 0;             // i in [1, m-1]
    Bitset witnesses;         // W_i
    Bitset duals;             // D_i
    Bitset sample;            // S_i = W_i ∪ D_i
    Partition split;          // P'_i: medium parts split into halves
    std::vector<SamplePartInfo> part_info;  // per part of P_i
};

struct SampleSets {
    MergeSequence canonical;           // the maximal-chain sequence used
    std::vector<SampleStep> steps;     // index i-1 holds step i
    std::vector<int> ball_sample_log;  // measured max |Ball^r ∩ S_{i-1}| per step
};

/// Reverse-scan sample-set construction (witnesses, medium halves, duals).
/// The result is re-verified to be a (2,8)-sample set for (P'_i, R_{i+1})
/// at every step.
inline SampleSets build_sample_sets(const Graph& g, const MergeSequence& input, int r) {
    if (!verify_merge(g, input).ok()) throw InputError("build_sample_sets: invalid sequence");
    SampleSets out;
    out.canonical = canonicalize(input);
    const MergeSequence& seq = out.canonical;
    const int m = seq.length();
    const int n = g.size();
    if (m < 2) {
        return out;  // single-vertex sequence: S_0 = V is all there is
    }

    // witnesses, scanned in reverse; picks stay pairwise > 2 apart in R_{i+1}
    std::vector<std::vector<std::vector<int>>> picks(m);  // [i][part] -> witnesses
    Bitset carried(n);                                    // W_{i+1}
    std::vector<Bitset> witness_sets(m, Bitset(n));
    for (int i = m - 2; i >= 0; --i) {  // step i+1 in 1-based terms
        const Partition& p = seq.steps[i].partition;
        const ResolvedSet& rr = seq.steps[i + 1].resolved;
        std::vector<Bitset> ball2(n);
        for (int v = 0; v < n; ++v) ball2[v] = rr.ball(v, 2);
        picks[i].resize(p.count());
        Bitset wi(n);
        for (int a = 0; a < p.count(); ++a) {
            std::vector<int> chosen = (carried & p.part(a)).to_vector();
            Bitset blocked(n);
            for (int w : chosen) blocked |= ball2[w];
            while (int(chosen.size()) < 3) {
                int next = p.part(a).minus(blocked).find_first();
                if (next < 0) break;
                chosen.push_back(next);
                blocked |= ball2[next];
            }
            for (int w : chosen) wi.set(w);
            picks[i][a] = std::move(chosen);
        }
        witness_sets[i] = wi;
        carried = wi;
    }

    // classification and medium halves per step
    std::vector<Partition> splits(m);
    std::vector<std::vector<SamplePartInfo>> infos(m);
    for (int i = 0; i + 1 < m; ++i) {
        const Partition& p = seq.steps[i].partition;
        const ResolvedSet& rr = seq.steps[i + 1].resolved;
        infos[i].resize(p.count());
        std::vector<int> label(n);
        int next_label = 0;
        for (int a = 0; a < p.count(); ++a) {
            SamplePartInfo& info = infos[i][a];
            info.witnesses = picks[i][a];
            const auto& w = info.witnesses;
            if (int(w.size()) == 3) {
                info.cls = PartClass::Large;
            } else if (int(w.size()) == 2 && !rr.ball(w[0], 6).test(w[1])) {
                info.cls = PartClass::Medium;
                info.half1 = rr.ball(w[0], 2) & p.part(a);
                info.half2 = rr.ball(w[1], 2) & p.part(a);
                if (info.half1.intersects(info.half2))
                    throw std::logic_error("medium halves intersect");
                if ((info.half1 | info.half2) != p.part(a))
                    throw std::logic_error("medium halves do not cover the part");
            } else {
                info.cls = PartClass::Small;
            }
            int l1 = next_label++, l2 = info.cls == PartClass::Medium ? next_label++ : l1;
            p.part(a).for_each([&](int v) {
                label[v] = (info.cls == PartClass::Medium && info.half2.test(v)) ? l2 : l1;
            });
        }
        splits[i] = Partition::from_labels(n, label);
    }

    // duals, again in reverse, in inclusion-minimal batches per ordered pair
    std::vector<Bitset> dual_sets(m, Bitset(n));
    Bitset dcarried(n);
    for (int i = m - 2; i >= 0; --i) {
        const Partition& ps = splits[i];
        Bitset di = dcarried;
        auto has_dual = [&](const Bitset& xs, const Bitset& ys) {
            bool no_pairs = xs.empty() || ys.empty() || (xs == ys && xs.count() == 1);
            if (no_pairs) return true;
            Bitset cand = di & xs;
            Bitset cov(n);
            cand.for_each([&](int u) { cov |= g.neighbours(u); });
            if (ys.is_subset_of(cov)) return true;
            Bitset acand = di & ys;
            Bitset acov(n);
            acand.for_each([&](int u) {
                Bitset non = g.neighbours(u).complemented();
                non.reset(u);
                acov |= non;
            });
            return xs.is_subset_of(acov);
        };
        for (int a = 0; a < ps.count(); ++a)
            for (int b = 0; b < ps.count(); ++b) {
                if (has_dual(ps.part(a), ps.part(b))) continue;
                // minimal batch on top of current picks: greedy over the
                // remainder, then reverse-delete
                Bitset delta = greedy_dual_extension(g, ps.part(a), ps.part(b), di);
                di |= delta;
            }
        dual_sets[i] = di;
        dcarried = di;
    }

    // assemble steps and the diagnostic ball counts
    for (int i = 0; i + 1 < m; ++i) {
        SampleStep st;
        st.step = i + 1;
        st.witnesses = witness_sets[i];
        st.duals = dual_sets[i];
        st.sample = witness_sets[i] | dual_sets[i];
        st.split = splits[i];
        st.part_info = infos[i];
        out.steps.push_back(std::move(st));
    }
    for (int i = 1; i + 1 < m; ++i) {
        const ResolvedSet& rr = seq.steps[i + 1].resolved;
        const Bitset& prev = out.steps[i - 1].sample;  // S_{i-1} for step i's bound
        int worst = 0;
        for (int v = 0; v < n; ++v)
            worst = std::max(worst, (rr.ball(v, r) & prev).count());
        out.ball_sample_log.push_back(worst);
    }
    return out;
}

/// Verifies the (2,8)-sample-set property of S for (P', R): witnesses per
/// part for 8-small or 2-large, and a dual inside S for every ordered pair.
inline bool verify_sample_set(const Graph& g, const Partition& split, const ResolvedSet& r,
                              const Bitset& sample) {
    const int n = g.size();
    for (int a = 0; a < split.count(); ++a) {
        const Bitset& part = split.part(a);
        bool ok = false;
        // 8-small with a witness from the sample
        (sample & part).for_each([&](int w) {
            if (ok) return;
            if (part.is_subset_of(r.ball(w, 8))) ok = true;
        });
        if (!ok) {
            // 2-large: three sample vertices pairwise > 2 apart
            auto cand = (sample & part).to_vector();
            for (size_t i = 0; i < cand.size() && !ok; ++i)
                for (size_t j = i + 1; j < cand.size() && !ok; ++j)
                    for (size_t k = j + 1; k < cand.size() && !ok; ++k) {
                        if (r.ball(cand[i], 2).test(cand[j])) continue;
                        if (r.ball(cand[i], 2).test(cand[k])) continue;
                        if (r.ball(cand[j], 2).test(cand[k])) continue;
                        ok = true;
                    }
        }
        if (!ok) return false;
    }
    for (int a = 0; a < split.count(); ++a)
        for (int b = 0; b < split.count(); ++b) {
            const Bitset& xs = split.part(a);
            const Bitset& ys = split.part(b);
            if (xs == ys && xs.count() == 1) continue;
            Bitset cov(n);
            (sample & xs).for_each([&](int u) { cov |= g.neighbours(u); });
            if (ys.is_subset_of(cov)) continue;
            Bitset acov(n);
            (sample & ys).for_each([&](int u) {
                Bitset non = g.neighbours(u).complemented();
                non.reset(u);
                acov |= non;
            });
            if (!xs.is_subset_of(acov)) return false;
        }
    return true;
}

/// Definable order from the sample sets: S_{m-1} first, then the successive
/// differences down to S_0 \ S_1, each block in vertex-id order.
inline VertexOrder build_definable_order(const Graph& g, const MergeSequence& seq, int r) {
    SampleSets ss = build_sample_sets(g, seq, r);
    const int n = g.size();
    VertexOrder order;
    Bitset placed(n);
    auto place_block = [&](const Bitset& s) {
        s.minus(placed).for_each([&](int v) { order.order.push_back(v); });
        placed |= s;
    };
    for (int i = int(ss.steps.size()) - 1; i >= 0; --i) place_block(ss.steps[i].sample);
    place_block(Bitset::full(n));  // S_0 = V
    return order;
}

}  // namespace mw
