#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "config.hpp"
#include "graph.hpp"
#include "partition.hpp"
#include "util.hpp"

namespace mw {

/// Symmetric set of part-id pairs (self-pairs allowed) describing a P-flip,
/// relative to a named partition.
struct FlipSpec {
    std::vector<std::pair<int, int>> flipped;  // canonical: a <= b, sorted

    void normalize() {
        for (auto& [a, b] : flipped)
            if (a > b) std::swap(a, b);
        std::sort(flipped.begin(), flipped.end());
        flipped.erase(std::unique(flipped.begin(), flipped.end()), flipped.end());
    }

    void validate(const Partition& p) const {
        for (auto [a, b] : flipped)
            if (a < 0 || b < 0 || a >= p.count() || b >= p.count())
                throw InputError("flip references a part id outside the partition");
    }

    bool empty() const { return flipped.empty(); }
    bool operator==(const FlipSpec& o) const { return flipped == o.flipped; }
};

/// Applies a P-flip: complements adjacency between every flipped part pair.
/// The diagonal is never self-looped. An involution per pair.
inline Graph apply_flip(const Graph& g, const Partition& p, const FlipSpec& f) {
    f.validate(p);
    const int n = g.size();
    // mask[a] = union of parts flipped against part a
    std::vector<Bitset> mask(p.count(), Bitset(n));
    for (auto [a, b] : f.flipped) {
        mask[a] |= p.part(b);
        mask[b] |= p.part(a);
    }
    Graph out(n);
    for (int v = 0; v < n; ++v) {
        Bitset row = g.neighbours(v);
        row ^= mask[p.part_of(v)];
        row.reset(v);
        out.set_row(v, std::move(row));
    }
    return out;
}

/// Recovers the FlipSpec turning g into h with respect to p, if one exists.
inline std::optional<FlipSpec> infer_flip(const Graph& g, const Partition& p, const Graph& h) {
    if (g.size() != h.size()) return std::nullopt;
    FlipSpec f;
    for (int a = 0; a < p.count(); ++a)
        for (int b = a; b < p.count(); ++b) {
            bool same = true, comp = true;
            p.part(a).for_each([&](int u) {
                Bitset dom = p.part(b);
                dom.reset(u);
                Bitset before = g.neighbours(u) & dom;
                Bitset after = h.neighbours(u) & dom;
                if (before != after) same = false;
                if ((before ^ after) != dom) comp = false;
            });
            if (!same && !comp) return std::nullopt;
            // an empty pair set is both; prefer "unflipped"
            if (!same) f.flipped.emplace_back(a, b);
        }
    return f;
}

/// Set of unordered resolved vertex pairs, stored as symmetric bitset rows
/// so that homogeneity scans and BFS in (V,R) stay cheap.
class ResolvedSet {
public:
    ResolvedSet() = default;
    explicit ResolvedSet(int n) : n_(n), rows_(n, Bitset(n)) {}

    int universe() const { return n_; }

    void add(int u, int v) {
        if (u == v) throw InputError("resolved set cannot contain a self-pair");
        rows_[u].set(v);
        rows_[v].set(u);
    }
    bool contains(int u, int v) const { return u != v && rows_[u].test(v); }
    const Bitset& row(int v) const { return rows_[v]; }

    void merge(const ResolvedSet& o) {
        for (int v = 0; v < n_; ++v) rows_[v] |= o.rows_[v];
    }
    void add_edges_of(const Graph& g) {
        for (int v = 0; v < n_; ++v) rows_[v] |= g.neighbours(v);
    }

    bool subset_of(const ResolvedSet& o) const {
        for (int v = 0; v < n_; ++v)
            if (!rows_[v].is_subset_of(o.rows_[v])) return false;
        return true;
    }
    bool operator==(const ResolvedSet& o) const { return rows_ == o.rows_; }

    long pair_count() const {
        long c = 0;
        for (auto& r : rows_) c += r.count();
        return c / 2;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            rows_[u].for_each([&](int v) { if (u < v) out.emplace_back(u, v); });
        return out;
    }

    /// BFS ball in the graph (V, R).
    Bitset ball(int v, int r) const {
        Bitset cur(n_), frontier(n_);
        cur.set(v);
        frontier.set(v);
        for (int d = 0; d < r && !frontier.empty(); ++d) {
            Bitset next(n_);
            frontier.for_each([&](int u) { next |= rows_[u]; });
            next.and_not(cur);
            cur |= next;
            frontier = std::move(next);
        }
        return cur;
    }

    Graph as_graph() const {
        Graph g(n_);
        for (int v = 0; v < n_; ++v) g.set_row(v, rows_[v]);
        return g;
    }

private:
    int n_ = 0;
    std::vector<Bitset> rows_;
};

inline Bitset resolved_ball(const ResolvedSet& r, int v, int radius) {
    return r.ball(v, radius);
}

struct HomogeneityResult {
    bool ok = false;
    std::pair<int, int> offending{-1, -1};  // part pair violating homogeneity
    FlipSpec witness;                       // flip erasing all unresolved edges
};

/// P is homogeneous modulo R when every part pair's unresolved pairs are all
/// edges or all non-edges. On success the witness flips exactly the pairs
/// whose unresolved pairs are edges, so the witness flip's edges lie in R.
inline HomogeneityResult homogeneous_modulo(const Graph& g, const Partition& p,
                                            const ResolvedSet& r) {
    const int n = g.size();
    HomogeneityResult res;
    for (int a = 0; a < p.count(); ++a) {
        for (int b = a; b < p.count(); ++b) {
            bool has_edge = false, has_nonedge = false;
            p.part(a).for_each([&](int u) {
                Bitset unres = p.part(b);
                unres.and_not(r.row(u));
                unres.reset(u);
                if (a == b) {
                    // count each unordered pair once
                    for (int w = 0; w < n && (!has_edge || !has_nonedge); ++w) {
                        if (w <= u || !unres.test(w)) continue;
                        (g.adjacent(u, w) ? has_edge : has_nonedge) = true;
                    }
                } else {
                    if ((g.neighbours(u) & unres).count() > 0) has_edge = true;
                    if (unres.minus(g.neighbours(u)).count() > 0) has_nonedge = true;
                }
            });
            if (has_edge && has_nonedge) {
                res.ok = false;
                res.offending = {a, b};
                return res;
            }
            if (has_edge) res.witness.flipped.emplace_back(a, b);
        }
    }
    res.ok = true;
    return res;
}

enum class EvalMode { Exact, Sampled, Auto };

namespace detail {

inline long flip_pair_bits(int p) { return long(p) * (p + 1) / 2; }

inline bool exact_flip_feasible(int parts, const RunConfig& cfg) {
    return parts <= cfg.flip_exact_cap && flip_pair_bits(parts) <= 40;
}

// pair (a <= b) -> bit index
inline int pair_index(int a, int b) { return b * (b + 1) / 2 + a; }

/// Enumerates all P-flips of g in Gray-code order and invokes
/// visit(mask_words) for each, where mask[part] is the XOR row mask.
/// Single-word fast path lives in the callers.
template <class Visit>
void enumerate_flips(const Graph& g, const Partition& p, Visit visit) {
    const int np = p.count();
    const long bits = flip_pair_bits(np);
    std::vector<std::pair<int, int>> pair_of(bits);
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a) pair_of[pair_index(a, b)] = {a, b};

    std::vector<Bitset> mask(np, Bitset(g.size()));
    visit(mask);  // code 0: nothing flipped
    const uint64_t total = uint64_t{1} << bits;
    for (uint64_t k = 1; k < total; ++k) {
        int bit = __builtin_ctzll(k);  // Gray transition
        auto [a, b] = pair_of[bit];
        mask[a] ^= p.part(b);
        if (a != b) mask[b] ^= p.part(a);
        visit(mask);
    }
}

inline FlipSpec spec_from_code(uint64_t code, int np) {
    FlipSpec f;
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a)
            if ((code >> pair_index(a, b)) & 1) f.flipped.emplace_back(a, b);
    return f;
}

/// Single-word (n <= 64) exact intersection of radius-r balls over all
/// P-flips, for every source vertex at once.
inline std::vector<uint64_t> exact_balls_word(const Graph& g, const Partition& p, int r) {
    const int n = g.size();
    const int np = p.count();
    std::vector<uint64_t> row(n), part_w(np), mask(np, 0);
    for (int v = 0; v < n; ++v) row[v] = g.neighbours(v).words()[0];
    for (int a = 0; a < np; ++a) part_w[a] = p.part(a).words()[0];
    const auto& part_of = p.labels();

    const long bits = flip_pair_bits(np);
    std::vector<std::pair<int, int>> pair_of(bits);
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a) pair_of[pair_index(a, b)] = {a, b};

    std::vector<uint64_t> acc(n);
    std::vector<int> active;
    for (int v = 0; v < n; ++v) {
        acc[v] = ~uint64_t{0} >> (64 - n);
        active.push_back(v);
    }

    auto run = [&]() {
        for (size_t i = 0; i < active.size();) {
            int v = active[i];
            uint64_t cur = uint64_t{1} << v, frontier = cur;
            const uint64_t target = acc[v];
            for (int step = 0; step < r && frontier; ++step) {
                if ((target & ~cur) == 0) break;  // ball already covers acc
                uint64_t nxt = 0, f = frontier;
                while (f) {
                    int u = __builtin_ctzll(f);
                    f &= f - 1;
                    nxt |= row[u] ^ mask[part_of[u]];
                }
                nxt &= ~cur;
                cur |= nxt;
                frontier = nxt;
            }
            acc[v] &= cur;
            if (acc[v] == (uint64_t{1} << v)) {  // can never shrink further
                active[i] = active.back();
                active.pop_back();
            } else {
                ++i;
            }
        }
    };

    run();
    const uint64_t total = uint64_t{1} << bits;
    for (uint64_t k = 1; k < total && !active.empty(); ++k) {
        int bit = __builtin_ctzll(k);
        auto [a, b] = pair_of[bit];
        mask[a] ^= part_w[b];
        if (a != b) mask[b] ^= part_w[a];
        run();
    }
    return acc;
}

inline Bitset word_to_bitset(uint64_t w, int n) {
    Bitset b(n);
    while (w) {
        b.set(__builtin_ctzll(w));
        w &= w - 1;
    }
    return b;
}

inline Bitset ball_under_mask(const Graph& g, const Partition& p,
                              const std::vector<Bitset>& mask, int v, int r) {
    const int n = g.size();
    Bitset cur(n), frontier(n);
    cur.set(v);
    frontier.set(v);
    for (int step = 0; step < r && !frontier.empty(); ++step) {
        Bitset nxt(n);
        frontier.for_each([&](int u) {
            Bitset row = g.neighbours(u);
            row ^= mask[p.part_of(u)];
            nxt |= row;
        });
        nxt.and_not(cur);
        cur |= nxt;
        frontier = std::move(nxt);
    }
    return cur;
}

inline std::vector<Bitset> masks_of_spec(const Graph& g, const Partition& p, const FlipSpec& f) {
    std::vector<Bitset> mask(p.count(), Bitset(g.size()));
    for (auto [a, b] : f.flipped) {
        mask[a] |= p.part(b);
        mask[b] |= p.part(a);
    }
    return mask;
}

inline FlipSpec random_spec(Rng& rng, int np) {
    FlipSpec f;
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a)
            if (rng.coin()) f.flipped.emplace_back(a, b);
    return f;
}

}  // namespace detail

struct BallsResult {
    std::vector<Bitset> balls;  // per source vertex
    bool exact = false;         // sampled balls are supersets of the exact ones
};

/// Radius-r flip-metric balls around every vertex: the intersection of
/// Ball^r_{G'}(v) over P-flips G'. Exact mode enumerates all flips and is
/// capped by cfg.flip_exact_cap parts; sampled mode intersects over a seeded
/// sample of flips plus greedy local search, yielding supersets (UPPER).
inline BallsResult flip_balls(const Graph& g, const Partition& p, int r,
                              EvalMode mode, const RunConfig& cfg = {}) {
    const int n = g.size();
    const int np = p.count();
    bool feasible = detail::exact_flip_feasible(np, cfg);
    if (mode == EvalMode::Exact && !feasible)
        throw BudgetError("exact flip enumeration beyond configured cap: " +
                          std::to_string(np) + " parts");
    bool exact = (mode != EvalMode::Sampled) && feasible;

    BallsResult res;
    res.exact = exact;
    if (exact) {
        if (n <= 64) {
            auto words = detail::exact_balls_word(g, p, r);
            res.balls.reserve(n);
            for (int v = 0; v < n; ++v)
                res.balls.push_back(detail::word_to_bitset(words[v], n));
            return res;
        }
        res.balls.assign(n, Bitset::full(n));
        detail::enumerate_flips(g, p, [&](const std::vector<Bitset>& mask) {
            for (int v = 0; v < n; ++v)
                res.balls[v] &= detail::ball_under_mask(g, p, mask, v, r);
        });
        return res;
    }

    // Sampled: deterministic for a fixed seed. Intersection is
    // order-independent, so the combine is safe under any schedule.
    Rng rng(cfg.seed);
    res.balls.assign(n, Bitset::full(n));
    auto absorb = [&](const FlipSpec& f) {
        auto mask = detail::masks_of_spec(g, p, f);
        for (int v = 0; v < n; ++v)
            res.balls[v] &= detail::ball_under_mask(g, p, mask, v, r);
    };
    absorb(FlipSpec{});  // the graph itself
    FlipSpec all;
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a) all.flipped.emplace_back(a, b);
    absorb(all);
    for (int s = 0; s < cfg.sample_flips; ++s) absorb(detail::random_spec(rng, np));

    // Greedy descent per vertex: flip one part pair at a time while the
    // single-flip ball shrinks; every accepted state tightens the intersection.
    for (int v = 0; v < n; ++v) {
        for (int restart = 0; restart < cfg.greedy_restarts; ++restart) {
            FlipSpec cur = detail::random_spec(rng, np);
            auto mask = detail::masks_of_spec(g, p, cur);
            int size = detail::ball_under_mask(g, p, mask, v, r).count();
            res.balls[v] &= detail::ball_under_mask(g, p, mask, v, r);
            bool improved = true;
            while (improved) {
                improved = false;
                for (int b = 0; b < np && !improved; ++b)
                    for (int a = 0; a <= b && !improved; ++a) {
                        mask[a] ^= p.part(b);
                        if (a != b) mask[b] ^= p.part(a);
                        Bitset ball = detail::ball_under_mask(g, p, mask, v, r);
                        if (ball.count() < size) {
                            size = ball.count();
                            res.balls[v] &= ball;
                            improved = true;
                        } else {
                            mask[a] ^= p.part(b);
                            if (a != b) mask[b] ^= p.part(a);
                        }
                    }
            }
        }
    }
    return res;
}

inline Bitset flip_ball(const Graph& g, const Partition& p, int v, int r,
                        EvalMode mode, const RunConfig& cfg = {}, bool* exact_out = nullptr) {
    auto res = flip_balls(g, p, r, mode, cfg);
    if (exact_out) *exact_out = res.exact;
    return res.balls[v];
}

struct FlipDistResult {
    int dist = 0;      // kInf when above cap
    bool exact = false;  // sampled mode yields a witnessed lower bound
    FlipSpec witness;  // flip attaining the reported distance
};

/// Flip metric dist_P(x,y) = max over P-flips of dist_{G'}(x,y), collapsed to
/// kInf above `cap`. Sampled mode maximizes over a seeded sample (LOWER bound).
inline FlipDistResult flip_dist(const Graph& g, const Partition& p, int x, int y,
                                int cap, EvalMode mode, const RunConfig& cfg = {}) {
    const int np = p.count();
    if (cap >= kInf || cap < 0) cap = g.size();
    FlipDistResult res;
    if (x == y) {
        res.exact = true;
        return res;
    }
    bool feasible = detail::exact_flip_feasible(np, cfg);
    if (mode == EvalMode::Exact && !feasible)
        throw BudgetError("exact flip enumeration beyond configured cap");
    bool exact = (mode != EvalMode::Sampled) && feasible;

    auto dist_under = [&](const std::vector<Bitset>& mask) {
        Bitset cur(g.size()), frontier(g.size());
        cur.set(x);
        frontier.set(x);
        for (int d = 1; d <= cap; ++d) {
            Bitset nxt(g.size());
            frontier.for_each([&](int u) {
                Bitset row = g.neighbours(u);
                row ^= mask[p.part_of(u)];
                nxt |= row;
            });
            nxt.and_not(cur);
            if (nxt.empty()) return kInf;
            if (nxt.test(y)) return d;
            cur |= nxt;
            frontier = std::move(nxt);
        }
        return kInf;
    };

    res.exact = exact;
    if (exact) {
        uint64_t code = 0, best_code = 0;
        int best = -1;
        // track the Gray code alongside the masks to recover the witness
        const long bits = detail::flip_pair_bits(np);
        std::vector<std::pair<int, int>> pair_of(bits);
        for (int b = 0; b < np; ++b)
            for (int a = 0; a <= b; ++a) pair_of[detail::pair_index(a, b)] = {a, b};
        std::vector<Bitset> mask(np, Bitset(g.size()));
        auto consider = [&]() {
            int d = dist_under(mask);
            if (d > best) {
                best = d;
                best_code = code;
            }
        };
        consider();
        const uint64_t total = uint64_t{1} << bits;
        for (uint64_t k = 1; k < total && best < kInf; ++k) {
            int bit = __builtin_ctzll(k);
            auto [a, b] = pair_of[bit];
            code ^= uint64_t{1} << bit;
            mask[a] ^= p.part(b);
            if (a != b) mask[b] ^= p.part(a);
            consider();
        }
        res.dist = best;
        res.witness = detail::spec_from_code(best_code, np);
        return res;
    }

    Rng rng(cfg.seed);
    int best = -1;
    FlipSpec best_spec;
    auto consider = [&](const FlipSpec& f) {
        int d = dist_under(detail::masks_of_spec(g, p, f));
        if (d > best) {
            best = d;
            best_spec = f;
        }
        return d;
    };
    consider(FlipSpec{});
    FlipSpec all;
    for (int b = 0; b < np; ++b)
        for (int a = 0; a <= b; ++a) all.flipped.emplace_back(a, b);
    consider(all);
    for (int s = 0; s < cfg.sample_flips && best < kInf; ++s)
        consider(detail::random_spec(rng, np));
    for (int restart = 0; restart < cfg.greedy_restarts && best < kInf; ++restart) {
        FlipSpec cur = detail::random_spec(rng, np);
        int size = consider(cur);
        bool improved = true;
        while (improved && size < kInf) {
            improved = false;
            for (int b = 0; b < np && !improved; ++b)
                for (int a = 0; a <= b && !improved; ++a) {
                    FlipSpec cand = cur;
                    auto it = std::find(cand.flipped.begin(), cand.flipped.end(),
                                        std::make_pair(a, b));
                    if (it != cand.flipped.end())
                        cand.flipped.erase(it);
                    else
                        cand.flipped.emplace_back(a, b);
                    cand.normalize();
                    int d = consider(cand);
                    if (d > size) {
                        size = d;
                        cur = cand;
                        improved = true;
                    }
                }
        }
    }
    res.dist = best;
    res.witness = best_spec;
    return res;
}

}  // namespace mw
