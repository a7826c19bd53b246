#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "graph.hpp"

namespace mw {

/// Vertex partition with dense part ids. Part ids are always renumbered
/// canonically by minimum member vertex, so equal partitions compare equal.
class Partition {
public:
    Partition() = default;

    static Partition singletons(int n) {
        Partition p;
        p.n_ = n;
        p.part_of_.resize(n);
        std::iota(p.part_of_.begin(), p.part_of_.end(), 0);
        for (int v = 0; v < n; ++v) {
            Bitset b(n);
            b.set(v);
            p.parts_.push_back(std::move(b));
        }
        return p;
    }

    static Partition whole(int n) {
        Partition p;
        p.n_ = n;
        p.part_of_.assign(n, 0);
        p.parts_.push_back(Bitset::full(n));
        return p;
    }

    /// Builds from an arbitrary vertex -> group-id labelling.
    static Partition from_labels(int n, const std::vector<int>& label) {
        Partition p;
        p.n_ = n;
        p.part_of_.assign(n, -1);
        std::map<int, int> remap;  // label -> part id in min-vertex order
        for (int v = 0; v < n; ++v)
            if (!remap.count(label[v])) {
                remap[label[v]] = int(p.parts_.size());
                p.parts_.push_back(Bitset(n));
            }
        for (int v = 0; v < n; ++v) {
            int id = remap[label[v]];
            p.part_of_[v] = id;
            p.parts_[id].set(v);
        }
        return p;
    }

    static Partition from_parts(int n, const std::vector<std::vector<int>>& groups) {
        std::vector<int> label(n, -1);
        int g = 0;
        for (auto& grp : groups) {
            if (grp.empty()) throw InputError("empty part");
            for (int v : grp) {
                if (v < 0 || v >= n) throw InputError("vertex out of range in part");
                if (label[v] != -1) throw InputError("vertex in two parts");
                label[v] = g;
            }
            ++g;
        }
        for (int v = 0; v < n; ++v)
            if (label[v] == -1) throw InputError("vertex missing from partition");
        return from_labels(n, label);
    }

    int n() const { return n_; }
    int count() const { return int(parts_.size()); }
    int part_of(int v) const { return part_of_[v]; }
    const Bitset& part(int id) const { return parts_[id]; }
    const std::vector<Bitset>& parts() const { return parts_; }
    const std::vector<int>& labels() const { return part_of_; }

    bool operator==(const Partition& o) const { return part_of_ == o.part_of_; }
    bool operator!=(const Partition& o) const { return !(*this == o); }

    /// True when every part of this partition lies inside a part of `o`.
    bool refines(const Partition& o) const {
        if (n_ != o.n_) return false;
        for (auto& pt : parts_) {
            int v0 = pt.find_first();
            if (!pt.is_subset_of(o.part(o.part_of(v0)))) return false;
        }
        return true;
    }

    /// Common refinement P ∧ Q.
    Partition meet(const Partition& o) const {
        std::vector<int> label(n_);
        for (int v = 0; v < n_; ++v)
            label[v] = part_of_[v] * o.count() + o.part_of(v);
        return from_labels(n_, label);
    }

    Partition merge_parts(int a, int b) const {
        assert(a != b);
        std::vector<int> label = part_of_;
        for (int v = 0; v < n_; ++v)
            if (label[v] == b) label[v] = a;
        return from_labels(n_, label);
    }

    /// |S/P|: number of parts meeting S.
    int quotient_count(const Bitset& s) const {
        std::vector<char> seen(parts_.size(), 0);
        int c = 0;
        s.for_each([&](int v) {
            if (!seen[part_of_[v]]) { seen[part_of_[v]] = 1; ++c; }
        });
        return c;
    }

    /// Part ids meeting S, ascending.
    std::vector<int> quotient_parts(const Bitset& s) const {
        std::vector<char> seen(parts_.size(), 0);
        s.for_each([&](int v) { seen[part_of_[v]] = 1; });
        std::vector<int> ids;
        for (size_t i = 0; i < seen.size(); ++i)
            if (seen[i]) ids.push_back(int(i));
        return ids;
    }

    /// Compact key for memo tables: canonical part-of labelling.
    std::string key() const {
        std::string k(part_of_.begin(), part_of_.end());
        return k;
    }

private:
    int n_ = 0;
    std::vector<int> part_of_;
    std::vector<Bitset> parts_;
};

/// Partition of V(G) into atomic types over S: S split into singletons,
/// the rest grouped by neighbourhood trace on S.
inline Partition atomic_types(const Graph& g, const Bitset& s) {
    const int n = g.size();
    if (s.universe() != n) throw InputError("atomic_types: set universe mismatch");
    std::map<std::vector<uint64_t>, int> classes;
    std::vector<int> label(n);
    int next = n;  // class labels start above the singleton labels
    for (int v = 0; v < n; ++v) {
        if (s.test(v)) {
            label[v] = v;
            continue;
        }
        auto trace = (g.neighbours(v) & s).words();
        auto it = classes.find(trace);
        if (it == classes.end()) it = classes.emplace(std::move(trace), next++).first;
        label[v] = it->second;
    }
    return Partition::from_labels(n, label);
}

/// S-refinement P ∧ S: split every part by neighbourhood traces on S
/// outside the part.
inline Partition s_refinement(const Graph& g, const Partition& p, const Bitset& s) {
    const int n = g.size();
    std::vector<int> label(n);
    int next = 0;
    for (int id = 0; id < p.count(); ++id) {
        Bitset mask = s.minus(p.part(id));
        std::map<std::vector<uint64_t>, int> classes;
        p.part(id).for_each([&](int v) {
            auto trace = (g.neighbours(v) & mask).words();
            auto it = classes.find(trace);
            if (it == classes.end()) it = classes.emplace(std::move(trace), next++).first;
            label[v] = it->second;
        });
    }
    return Partition::from_labels(n, label);
}

inline int quotient_count(const Bitset& s, const Partition& p) {
    return p.quotient_count(s);
}

/// Strictly coarsening sequence of partitions. Endpoint validity (singletons
/// to one part) is what width evaluation requires; check with `validate`.
struct PartitionChain {
    std::vector<Partition> seq;

    int length() const { return int(seq.size()); }

    void validate() const {
        if (seq.empty()) throw InputError("empty chain");
        int n = seq.front().n();
        if (seq.front() != Partition::singletons(n))
            throw InputError("chain must start at singletons");
        if (seq.back().count() != 1)
            throw InputError("chain must end with one part");
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
            if (!seq[i].refines(seq[i + 1]) || seq[i] == seq[i + 1])
                throw InputError("chain not strictly coarsening at step " + std::to_string(i));
        }
    }

    bool is_maximal() const {
        int n = seq.front().n();
        if (int(seq.size()) != n) return false;
        for (size_t i = 0; i + 1 < seq.size(); ++i)
            if (seq[i + 1].count() != seq[i].count() - 1) return false;
        return true;
    }
};

struct VertexOrder {
    std::vector<int> order;  // order[i] = i-th vertex, smallest first

    void validate(int n) const {
        if (int(order.size()) != n) throw InputError("order has wrong length");
        std::vector<char> seen(n, 0);
        for (int v : order) {
            if (v < 0 || v >= n || seen[v]) throw InputError("order is not a permutation");
            seen[v] = 1;
        }
    }

    /// Position of each vertex in the order.
    std::vector<int> ranks() const {
        std::vector<int> r(order.size());
        for (size_t i = 0; i < order.size(); ++i) r[order[i]] = int(i);
        return r;
    }
};

}  // namespace mw
