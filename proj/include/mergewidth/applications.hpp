#pragma once

#include <map>
#include <vector>

#include "conversions.hpp"
#include "merge_seq.hpp"

namespace mw {

/// Quotient graph G/P: parts adjacent when some cross edge exists.
inline Graph quotient_graph(const Graph& g, const Partition& p) {
    Graph q(p.count());
    for (int a = 0; a < p.count(); ++a) {
        Bitset reach(g.size());
        p.part(a).for_each([&](int u) { reach |= g.neighbours(u); });
        for (int b = a + 1; b < p.count(); ++b)
            if (reach.intersects(p.part(b))) q.add_edge(a, b);
    }
    return q;
}

struct ColouringNumbers {
    int scol = 0, wcol = 0;
    std::vector<Bitset> sreach, wreach;  // per vertex, includes the vertex
};

/// Exact weak/strong r-reachability with respect to the order. A vertex u is
/// weakly reachable from v >= u via a path of length <= r with internal
/// vertices above u; strongly reachable when internals stay above v.
inline ColouringNumbers colouring_numbers(const Graph& g, const VertexOrder& order, int r) {
    const int n = g.size();
    order.validate(n);
    auto rank = order.ranks();
    ColouringNumbers out;
    out.sreach.assign(n, Bitset(n));
    out.wreach.assign(n, Bitset(n));

    for (int u = 0; u < n; ++u) {
        // BFS from u through vertices ranked above u; every visited vertex
        // ranked >= u has u weakly reachable
        Bitset visited(n), frontier(n);
        visited.set(u);
        frontier.set(u);
        for (int d = 0; d < r && !frontier.empty(); ++d) {
            Bitset next(n);
            frontier.for_each([&](int w) {
                if (w != u && rank[w] <= rank[u]) return;  // cannot pass through
                next |= g.neighbours(w);
            });
            next.and_not(visited);
            visited |= next;
            frontier = std::move(next);
        }
        visited.for_each([&](int v) {
            if (rank[v] >= rank[u]) out.wreach[v].set(u);
        });
    }
    for (int v = 0; v < n; ++v) {
        // BFS from v with internal vertices strictly above v; endpoints below
        // are collected but not expanded
        Bitset visited(n), frontier(n);
        visited.set(v);
        frontier.set(v);
        out.sreach[v].set(v);
        for (int d = 0; d < r && !frontier.empty(); ++d) {
            Bitset next(n);
            frontier.for_each([&](int w) {
                if (w != v && rank[w] <= rank[v]) return;
                next |= g.neighbours(w);
            });
            next.and_not(visited);
            next.for_each([&](int u) {
                if (rank[u] <= rank[v]) out.sreach[v].set(u);
            });
            visited |= next;
            frontier = std::move(next);
        }
    }
    for (int v = 0; v < n; ++v) {
        out.scol = std::max(out.scol, out.sreach[v].count());
        out.wcol = std::max(out.wcol, out.wreach[v].count());
    }
    return out;
}

struct QuotientCertificate {
    Partition partition;
    std::vector<int> part_index;  // construction step index per part
    VertexOrder part_order;       // order on part ids (reversed indices)
    Graph quotient;
    std::vector<int> weak_diameter;              // per part, in G
    std::map<int, std::pair<int, int>> columns;  // radius -> (scol, wcol) of the quotient
    bool firm_bound = false;                     // input sequence was 6-firm
};

namespace detail {

inline std::vector<int> weak_diameters(const Graph& g, const Partition& p) {
    std::vector<int> wd(p.count(), 0);
    for (int a = 0; a < p.count(); ++a) {
        auto verts = p.part(a).to_vector();
        for (int v : verts) {
            auto dist = g.distances_from(v);
            for (int u : verts) wd[a] = std::max(wd[a], dist[u]);
        }
        if (wd[a] >= kInf) wd[a] = kInf;
    }
    return wd;
}

inline VertexOrder order_by_reversed_index(const Partition& p, const std::vector<int>& index) {
    std::vector<int> ids(p.count());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
        if (index[a] != index[b]) return index[a] > index[b];
        return p.part(a).find_first() < p.part(b).find_first();
    });
    VertexOrder order;
    order.order = ids;
    return order;
}

}  // namespace detail

/// Sparse quotient of a (canonical, 6-firm) merge sequence: the maximally
/// unresolved parts, ordered by reversed construction index. Vertices whose
/// parts never hold an unresolved edge become singleton parts. When the top
/// part is still unresolved the whole graph has diameter <= 6 and the
/// quotient is a single part.
inline QuotientCertificate sparse_quotient(const Graph& g, const MergeSequence& input,
                                           const std::vector<int>& radii = {1, 2, 3}) {
    if (!verify_merge(g, input).ok()) throw InputError("sparse_quotient: invalid sequence");
    MergeSequence seq = canonicalize(input);
    const int n = g.size();
    const int m = seq.length();

    QuotientCertificate cert;
    cert.firm_bound = firmness(g, seq) <= 6;

    // unresolved incident edge per vertex and step
    auto unresolved_at = [&](int v, int step) {
        return !g.neighbours(v).minus(seq.steps[step].resolved.row(v)).empty();
    };
    // top case: the one part of P_m unresolved means diameter <= 6
    bool top_unresolved = false;
    for (int v = 0; v < n && !top_unresolved; ++v)
        if (unresolved_at(v, m - 1)) top_unresolved = true;
    std::vector<int> label(n), vertex_index(n, 0);
    if (top_unresolved) {
        for (int v = 0; v < n; ++v) {
            label[v] = 0;
            vertex_index[v] = m;
        }
    } else {
        for (int v = 0; v < n; ++v) {
            int best = -1;
            for (int step = 0; step < m; ++step) {
                const Partition& p = seq.steps[step].partition;
                bool unres = false;
                p.part(p.part_of(v)).for_each([&](int u) {
                    if (!unres && unresolved_at(u, step)) unres = true;
                });
                if (unres) best = step;
            }
            if (best < 0) {
                label[v] = -1 - v;  // never unresolved: singleton part
                vertex_index[v] = 0;
            } else {
                const Partition& p = seq.steps[best].partition;
                label[v] = p.part_of(v) * (m + 1) + best;
                vertex_index[v] = best + 1;
            }
        }
    }
    // distinct labels per chosen part: two vertices share a label only when
    // they share the part at its maximal unresolved step
    std::map<int, int> remap;
    for (int v = 0; v < n; ++v)
        if (!remap.count(label[v])) remap[label[v]] = int(remap.size());
    std::vector<int> lab2(n);
    for (int v = 0; v < n; ++v) lab2[v] = remap[label[v]];
    cert.partition = Partition::from_labels(n, lab2);
    cert.part_index.assign(cert.partition.count(), 0);
    for (int a = 0; a < cert.partition.count(); ++a)
        cert.part_index[a] = vertex_index[cert.partition.part(a).find_first()];
    cert.part_order = detail::order_by_reversed_index(cert.partition, cert.part_index);
    cert.quotient = quotient_graph(g, cert.partition);
    cert.weak_diameter = detail::weak_diameters(g, cert.partition);
    for (int r : radii) {
        auto cn = colouring_numbers(cert.quotient, cert.part_order, r);
        cert.columns[r] = {cn.scol, cn.wcol};
    }
    return cert;
}

struct QuasiIsometryReport {
    bool ok = true;
    std::pair<int, int> worst{-1, -1};
    int worst_gap = 0;  // dist_G - (a*dist_{G/P} + b) at the worst pair
};

/// Checks dist_{G/P}([x],[y]) <= dist_G(x,y) <= a*dist_{G/P}([x],[y]) + b for
/// all vertex pairs; infinite distances must line up on both sides.
inline QuasiIsometryReport verify_quasi_isometry(const Graph& g, const Partition& p,
                                                 int a, int b) {
    const int n = g.size();
    Graph q = quotient_graph(g, p);
    std::vector<std::vector<int>> qd(q.size());
    for (int i = 0; i < q.size(); ++i) qd[i] = q.distances_from(i);
    QuasiIsometryReport rep;
    rep.worst_gap = -kInf;
    for (int x = 0; x < n; ++x) {
        auto gd = g.distances_from(x);
        for (int y = x + 1; y < n; ++y) {
            int dq = qd[p.part_of(x)][p.part_of(y)];
            int dg = gd[y];
            bool pair_ok;
            if (dq >= kInf || dg >= kInf) pair_ok = dq >= kInf && dg >= kInf;
            else pair_ok = dq <= dg && dg <= a * dq + b;
            int gap = (dq >= kInf || dg >= kInf) ? (pair_ok ? -kInf : kInf)
                                                 : dg - (a * dq + b);
            if (gap > rep.worst_gap) {
                rep.worst_gap = gap;
                rep.worst = {x, y};
            }
            if (!pair_ok) rep.ok = false;
        }
    }
    return rep;
}

struct Cover {
    std::vector<Bitset> clusters;
    std::vector<int> centers;
};

struct BuiltCover {
    Cover quotient;  // clusters over part ids
    Cover lifted;    // clusters over vertices of G
};

/// Weak-2-reachability cover on the quotient, lifted to G by replacing part
/// ids with their vertex sets. Cluster C_u collects the parts that weakly
/// 2-reach u; every closed neighbourhood lands in the cluster of its
/// order-minimal member.
inline BuiltCover build_cover(const Graph& g, const Partition& p, const VertexOrder& part_order) {
    Graph q = quotient_graph(g, p);
    auto cn = colouring_numbers(q, part_order, 2);
    BuiltCover out;
    auto rank = part_order.ranks();
    for (int u = 0; u < q.size(); ++u) {
        Bitset cluster(q.size());
        for (int v = 0; v < q.size(); ++v)
            if (cn.wreach[v].test(u)) cluster.set(v);
        if (cluster.empty()) continue;
        out.quotient.clusters.push_back(cluster);
        out.quotient.centers.push_back(u);
        Bitset lifted(g.size());
        cluster.for_each([&](int part) { lifted |= p.part(part); });
        out.lifted.clusters.push_back(lifted);
        out.lifted.centers.push_back(p.part(u).find_first());
    }
    // the closed neighbourhood of every part must land in the cluster of its
    // order-minimal member
    for (int v = 0; v < q.size(); ++v) {
        Bitset closed = q.neighbours(v);
        closed.set(v);
        int best = -1;
        closed.for_each([&](int u) {
            if (best < 0 || rank[u] < rank[best]) best = u;
        });
        bool found = false;
        for (size_t c = 0; c < out.quotient.clusters.size() && !found; ++c)
            if (out.quotient.centers[c] == best &&
                closed.is_subset_of(out.quotient.clusters[c]))
                found = true;
        if (!found) throw std::logic_error("cover construction lost a neighbourhood");
    }
    return out;
}

struct CoverReport {
    std::vector<Violation> violations;
    int overlap = 0;  // measured max membership count
    bool ok() const { return violations.empty(); }
};

/// Definition check of a neighbourhood cover: (i) every open neighbourhood
/// inside some cluster, (ii) every cluster inside a radius-t ball, (iii)
/// every vertex in at most k clusters.
inline CoverReport verify_cover(const Graph& g, const Cover& cover, int t, int k) {
    const int n = g.size();
    CoverReport rep;
    for (auto& c : cover.clusters)
        if (c.empty()) rep.violations.push_back({"nonempty", -1, "empty cluster"});
    for (int v = 0; v < n; ++v) {
        bool covered = false;
        for (auto& c : cover.clusters)
            if (g.neighbours(v).is_subset_of(c)) {
                covered = true;
                break;
            }
        if (!covered)
            rep.violations.push_back({"coverage", v, "open neighbourhood in no cluster"});
    }
    for (size_t ci = 0; ci < cover.clusters.size(); ++ci) {
        const Bitset& c = cover.clusters[ci];
        bool inside = false;
        if (ci < cover.centers.size() && cover.centers[ci] >= 0)
            inside = c.is_subset_of(g.ball(cover.centers[ci], t));
        for (int v = 0; v < n && !inside; ++v) inside = c.is_subset_of(g.ball(v, t));
        if (!inside)
            rep.violations.push_back({"radius", int(ci), "cluster not inside any radius-t ball"});
    }
    for (int v = 0; v < n; ++v) {
        int cnt = 0;
        for (auto& c : cover.clusters) cnt += c.test(v);
        rep.overlap = std::max(rep.overlap, cnt);
        if (cnt > k)
            rep.violations.push_back({"overlap", v, "vertex in too many clusters"});
    }
    return rep;
}

/// Twin-width of a maximal chain: max over steps and parts A of the number
/// of parts B != A non-homogeneous to A.
inline int contraction_width(const Graph& g, const PartitionChain& chain) {
    chain.validate();
    if (!chain.is_maximal()) throw InputError("contraction_width requires a maximal chain");
    int width = 0;
    for (auto& p : chain.seq) {
        for (int a = 0; a < p.count(); ++a) {
            int bad = 0;
            for (int b = 0; b < p.count(); ++b) {
                if (a == b) continue;
                bool edge = false, nonedge = false;
                p.part(a).for_each([&](int u) {
                    if (!edge && (g.neighbours(u) & p.part(b)).count() > 0) edge = true;
                    if (!nonedge && p.part(b).minus(g.neighbours(u)).count() > 0) nonedge = true;
                });
                if (edge && nonedge) ++bad;
            }
            width = std::max(width, bad);
        }
    }
    return width;
}

/// Appendix-B pipeline for twin-width instances: maximally dominated parts
/// (weak diameter <= 2), reversed-index order, and the lifted radius-8 cover.
inline std::pair<QuotientCertificate, BuiltCover> tww_quotient_and_cover(
    const Graph& g, const PartitionChain& chain, const std::vector<int>& radii = {1, 2, 3}) {
    chain.validate();
    if (!chain.is_maximal()) throw InputError("tww pipeline requires a maximal chain");
    const int n = g.size();

    auto dominated = [&](const Bitset& a) {
        for (int u = 0; u < n; ++u) {
            Bitset ball = g.neighbours(u);
            ball.set(u);
            if (a.is_subset_of(ball)) return true;
        }
        return false;
    };

    // distinct parts with their last occurrence step
    std::map<std::vector<uint64_t>, int> last_step;
    for (int step = 0; step < chain.length(); ++step)
        for (auto& part : chain.seq[step].parts()) last_step[part.words()] = step;

    // for each vertex the highest dominated ancestor with all ancestors
    // above it undominated
    std::vector<int> label(n, -1), vertex_index(n, 0);
    for (int v = 0; v < n; ++v) {
        int chosen = -1;
        for (int step = chain.length() - 1; step >= 0; --step) {
            const Partition& p = chain.seq[step];
            const Bitset& part = p.part(p.part_of(v));
            if (last_step[part.words()] != step) continue;  // not the last occurrence
            if (dominated(part)) {
                chosen = step;
                break;  // everything above was scanned first and undominated
            }
        }
        if (chosen < 0) throw std::logic_error("singleton parts are always dominated");
        const Partition& p = chain.seq[chosen];
        label[v] = p.part_of(v) * (chain.length() + 1) + chosen;
        vertex_index[v] = chosen;
    }
    std::map<int, int> remap;
    for (int v = 0; v < n; ++v)
        if (!remap.count(label[v])) remap[label[v]] = int(remap.size());
    for (int v = 0; v < n; ++v) label[v] = remap[label[v]];

    QuotientCertificate cert;
    cert.partition = Partition::from_labels(n, label);
    cert.part_index.assign(cert.partition.count(), 0);
    for (int a = 0; a < cert.partition.count(); ++a)
        cert.part_index[a] = vertex_index[cert.partition.part(a).find_first()];
    cert.part_order = detail::order_by_reversed_index(cert.partition, cert.part_index);
    cert.quotient = quotient_graph(g, cert.partition);
    cert.weak_diameter = detail::weak_diameters(g, cert.partition);
    for (int r : radii) {
        auto cn = colouring_numbers(cert.quotient, cert.part_order, r);
        cert.columns[r] = {cn.scol, cn.wcol};
    }
    cert.firm_bound = true;
    BuiltCover cover = build_cover(g, cert.partition, cert.part_order);
    return {std::move(cert), std::move(cover)};
}

/// Positive sequences yield contraction sequences: returns the twin-width of
/// the canonicalized chain. Errors on non-positive input.
inline int positive_to_contraction(const Graph& g, const MergeSequence& input) {
    if (!verify_merge(g, input).ok()) throw InputError("positive_to_contraction: invalid sequence");
    const auto& rm = input.steps.back().resolved;
    for (int u = 0; u < g.size(); ++u)
        if (!rm.row(u).is_subset_of(g.neighbours(u)))
            throw InputError("positive_to_contraction: sequence resolves a non-edge");
    return contraction_width(g, chain_of(canonicalize(input)));
}

}  // namespace mw
