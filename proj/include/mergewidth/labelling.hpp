#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "merge_seq.hpp"

namespace mw {

/// Bit string with an exact bit length; bits are packed big-endian within
/// bytes (bit 7 of byte 0 first), which keeps labels portable.
struct BitString {
    std::vector<uint8_t> bytes;
    size_t bit_len = 0;
};

namespace detail {

class BitWriter {
public:
    void put_bit(int b) {
        if (bits_.bit_len % 8 == 0) bits_.bytes.push_back(0);
        if (b) bits_.bytes.back() |= uint8_t(1u << (7 - bits_.bit_len % 8));
        ++bits_.bit_len;
    }
    void put(uint64_t value, int width) {
        for (int i = width - 1; i >= 0; --i) put_bit(int((value >> i) & 1));
    }
    void put_bytes(const std::vector<uint8_t>& bytes) {
        for (uint8_t b : bytes) put(b, 8);
    }
    const BitString& bits() const { return bits_; }
    BitString take() { return std::move(bits_); }

private:
    BitString bits_;
};

class BitReader {
public:
    explicit BitReader(const BitString& bits) : bits_(bits) {}

    int get_bit() {
        if (pos_ >= bits_.bit_len) throw CodecError("bit stream truncated");
        int b = (bits_.bytes[pos_ / 8] >> (7 - pos_ % 8)) & 1;
        ++pos_;
        return b;
    }
    uint64_t get(int width) {
        uint64_t v = 0;
        for (int i = 0; i < width; ++i) v = (v << 1) | uint64_t(get_bit());
        return v;
    }
    std::vector<uint8_t> get_bytes(size_t count) {
        std::vector<uint8_t> out(count);
        for (auto& b : out) b = uint8_t(get(8));
        return out;
    }
    size_t position() const { return pos_; }
    size_t remaining() const { return bits_.bit_len - pos_; }

private:
    const BitString& bits_;
    size_t pos_ = 0;
};

}  // namespace detail

/// Prefix-closed set of words over {1..delta}, stored in lexicographic order
/// (a proper prefix precedes its extensions).
struct ThinTree {
    int delta = 1;
    std::vector<std::vector<int>> nodes;  // sorted; front() is the empty word

    int height() const {
        size_t h = 0;
        for (auto& w : nodes) h = std::max(h, w.size());
        return int(h);
    }
    int level_width(int j) const {
        int c = 0;
        for (auto& w : nodes) c += int(w.size()) == j;
        return c;
    }
    int max_level_width() const {
        int q = 0;
        for (int j = 0; j <= height(); ++j) q = std::max(q, level_width(j));
        return q;
    }
    void validate() const {
        if (delta < 1) throw InputError("thin tree needs delta >= 1");
        if (nodes.empty() || !nodes.front().empty())
            throw InputError("thin tree must contain the root");
        for (size_t i = 0; i < nodes.size(); ++i) {
            for (int letter : nodes[i])
                if (letter < 1 || letter > delta)
                    throw InputError("node word exceeds the alphabet");
            if (i > 0 && !(nodes[i - 1] < nodes[i]))
                throw InputError("nodes not sorted or not unique");
            if (!nodes[i].empty()) {
                std::vector<int> parent(nodes[i].begin(), nodes[i].end() - 1);
                if (!std::binary_search(nodes.begin(), nodes.end(), parent))
                    throw InputError("tree is not prefix-closed");
            }
        }
    }
};

/// Level-by-level codec: for j = 0..h the child-count fields (width
/// ceil(log2(delta+1))), then for j = 1..h the child-index fields (width
/// ceil(log2(delta)), storing index-1). Level widths are implied by q_0 = 1
/// and q_{j+1} = sum of level-j counts.
inline BitString encode_tree(const ThinTree& t) {
    t.validate();
    const int h = t.height();
    const int cw = ceil_log2(uint64_t(t.delta) + 1);
    const int iw = ceil_log2(uint64_t(t.delta));  // 0 when delta == 1
    detail::BitWriter w;
    // nodes are sorted lexicographically; group by level preserving order
    std::vector<std::vector<const std::vector<int>*>> levels(h + 2);
    for (auto& word : t.nodes) levels[word.size()].push_back(&word);
    for (int j = 0; j <= h; ++j) {
        for (auto* word : levels[j]) {
            int children = 0;
            for (auto* next : levels[j + 1])
                if (std::equal(word->begin(), word->end(), next->begin())) ++children;
            w.put(uint64_t(children), cw);
        }
    }
    for (int j = 1; j <= h; ++j)
        for (auto* word : levels[j]) w.put(uint64_t(word->back() - 1), iw);
    return w.take();
}

/// Exact inverse of encode_tree; rejects truncated or inconsistent streams.
inline ThinTree decode_tree(const BitString& bits, int delta, int h) {
    if (delta < 1 || h < 0) throw CodecError("bad tree header");
    const int cw = ceil_log2(uint64_t(delta) + 1);
    const int iw = ceil_log2(uint64_t(delta));
    detail::BitReader r(bits);
    std::vector<std::vector<int>> counts(h + 1);
    int qj = 1;
    for (int j = 0; j <= h; ++j) {
        counts[j].resize(qj);
        int next = 0;
        for (int t = 0; t < qj; ++t) {
            counts[j][t] = int(r.get(cw));
            if (counts[j][t] > delta) throw CodecError("child count exceeds delta");
            next += counts[j][t];
        }
        if (j == h && next != 0) throw CodecError("nodes below the stated height");
        qj = next;
    }
    ThinTree t;
    t.delta = delta;
    std::vector<std::vector<int>> level{{}};
    t.nodes.push_back({});
    for (int j = 1; j <= h; ++j) {
        std::vector<std::vector<int>> next_level;
        for (size_t parent = 0; parent < level.size(); ++parent) {
            for (int c = 0; c < counts[j - 1][parent]; ++c) {
                int letter = int(r.get(iw)) + 1;
                if (letter > delta) throw CodecError("child index out of range");
                std::vector<int> word = level[parent];
                word.push_back(letter);
                next_level.push_back(std::move(word));
            }
        }
        for (auto& w : next_level) t.nodes.push_back(w);
        level = std::move(next_level);
    }
    if (r.position() != bits.bit_len) throw CodecError("trailing bits after tree");
    std::sort(t.nodes.begin(), t.nodes.end());
    t.validate();
    return t;
}

/// The shared part tree of a merge sequence: level j holds the parts of
/// P_{m-j}, children ordered by minimum vertex.
struct LabelTree {
    int m = 0, delta = 1, h = 0;
    // per level, parts in tree order; entry = part id within P_{m-j}
    std::vector<std::vector<int>> level_parts;
    // per level, the letter (1-based child index) of each tree-order node
    std::vector<std::vector<int>> letters;
    // per level, tree-order position of the parent node
    std::vector<std::vector<int>> parent_pos;
    // per level, tree-order position of each part id
    std::vector<std::vector<int>> position;
};

inline LabelTree build_label_tree(const MergeSequence& seq) {
    LabelTree t;
    t.m = seq.length();
    t.h = t.m - 1;
    t.delta = std::max(1, valency_of(seq));
    t.level_parts.resize(t.m);
    t.letters.resize(t.m);
    t.parent_pos.resize(t.m);
    t.position.resize(t.m);
    t.level_parts[0] = {0};
    t.letters[0] = {0};
    t.parent_pos[0] = {-1};
    for (int j = 0; j < t.m; ++j) {
        const Partition& p = seq.steps[t.m - 1 - j].partition;
        t.position[j].assign(p.count(), -1);
        for (size_t pos = 0; pos < t.level_parts[j].size(); ++pos)
            t.position[j][t.level_parts[j][pos]] = int(pos);
        if (j + 1 == t.m) break;
        const Partition& child = seq.steps[t.m - 2 - j].partition;
        for (size_t pos = 0; pos < t.level_parts[j].size(); ++pos) {
            int parent = t.level_parts[j][pos];
            // sub-parts in min-vertex order; child partitions are already
            // canonically numbered that way
            int letter = 1;
            for (int c = 0; c < child.count(); ++c) {
                if (!child.part(c).is_subset_of(p.part(parent))) continue;
                t.level_parts[j + 1].push_back(c);
                t.letters[j + 1].push_back(letter++);
                t.parent_pos[j + 1].push_back(int(pos));
            }
        }
    }
    return t;
}

struct TouchedTree {
    ThinTree tree;
    std::vector<uint8_t> decisions;  // per node, lexicographic order
};

/// Word of the part at tree-order position `pos` of level j.
inline std::vector<int> node_word(const LabelTree& t, int j, int pos) {
    std::vector<int> word;
    for (int level = j; level >= 1; --level) {
        word.push_back(t.letters[level][pos]);
        pos = t.parent_pos[level][pos];
    }
    std::reverse(word.begin(), word.end());
    return word;
}

/// Touched tree of u: nodes whose parts contain u or hold a vertex resolved
/// with u at the next step; decision bit = adjacency of u to the unresolved
/// distinct vertices of the part (0 when none exist).
inline TouchedTree touched_tree(const Graph& g, const MergeSequence& seq, int u,
                                const LabelTree* shared = nullptr) {
    if (seq.steps.front().resolved.pair_count() != 0)
        throw InputError("touched_tree requires R_1 to be empty");
    LabelTree local;
    const LabelTree& t = shared ? *shared : (local = build_label_tree(seq), local);
    const int m = t.m;

    TouchedTree out;
    out.tree.delta = t.delta;
    std::vector<std::pair<std::vector<int>, uint8_t>> items;
    for (int j = 0; j < m; ++j) {
        const Partition& p = seq.steps[m - 1 - j].partition;
        for (size_t pos = 0; pos < t.level_parts[j].size(); ++pos) {
            const Bitset& part = p.part(t.level_parts[j][pos]);
            bool touched = part.test(u);
            if (!touched && j >= 1)
                touched = seq.steps[m - j].resolved.row(u).intersects(part);
            if (!touched) continue;
            // decision bit with respect to R_i, i = m - j
            Bitset unresolved = part;
            unresolved.reset(u);
            unresolved.and_not(seq.steps[m - 1 - j].resolved.row(u));
            uint8_t bit = 0;
            if (!unresolved.empty()) bit = unresolved.intersects(g.neighbours(u)) ? 1 : 0;
            items.emplace_back(node_word(t, j, int(pos)), bit);
        }
    }
    std::sort(items.begin(), items.end());
    for (auto& [word, bit] : items) {
        out.tree.nodes.push_back(word);
        out.decisions.push_back(bit);
    }
    out.tree.validate();
    return out;
}

/// Bit-exact adjacency label: header (m, delta, h as 32-bit big-endian),
/// then for h > 0 the identifier (h letter fields), a 32-bit byte length of
/// the encoded touched tree, the tree code, and the decision bits in
/// preorder; zero-padded to a byte boundary.
struct Label {
    std::vector<uint8_t> bytes;
};

inline std::vector<Label> build_labels(const Graph& g, const MergeSequence& seq) {
    if (!verify_merge(g, seq).ok()) throw InputError("build_labels: invalid sequence");
    if (seq.steps.front().resolved.pair_count() != 0)
        throw InputError("build_labels requires R_1 to be empty");
    LabelTree tree = build_label_tree(seq);
    const int m = tree.m, h = tree.h, delta = tree.delta;
    const int iw = ceil_log2(uint64_t(delta));

    std::vector<Label> labels;
    for (int u = 0; u < g.size(); ++u) {
        detail::BitWriter w;
        w.put(uint64_t(m), 32);
        w.put(uint64_t(delta), 32);
        w.put(uint64_t(h), 32);
        if (h > 0) {
            // identifier: the leaf path of u
            const Partition& leaves = seq.steps.front().partition;
            int pos = tree.position[h][leaves.part_of(u)];
            std::vector<int> word = node_word(tree, h, pos);
            for (int letter : word) w.put(uint64_t(letter - 1), iw);
            TouchedTree tu = touched_tree(g, seq, u, &tree);
            BitString code = encode_tree(tu.tree);
            w.put(uint64_t(code.bytes.size()), 32);
            w.put_bytes(code.bytes);
            for (uint8_t bit : tu.decisions) w.put_bit(bit);
        }
        BitString bits = w.take();
        labels.push_back({std::move(bits.bytes)});
    }
    return labels;
}

namespace detail {

struct ParsedLabel {
    int m = 0, delta = 0, h = 0;
    std::vector<int> identifier;  // letters, length h
    ThinTree tree;
    std::vector<uint8_t> decisions;
};

inline ParsedLabel parse_label(const Label& label, bool full) {
    BitString bits{label.bytes, label.bytes.size() * 8};
    BitReader r(bits);
    ParsedLabel out;
    out.m = int(r.get(32));
    out.delta = int(r.get(32));
    out.h = int(r.get(32));
    if (out.m <= 0 || out.delta <= 0 || out.h != out.m - 1)
        throw CodecError("malformed label header");
    if (out.h == 0) return out;
    const int iw = ceil_log2(uint64_t(out.delta));
    for (int i = 0; i < out.h; ++i) {
        int letter = int(r.get(iw)) + 1;
        if (letter > out.delta) throw CodecError("identifier letter out of range");
        out.identifier.push_back(letter);
    }
    if (!full) return out;
    size_t tree_bytes = size_t(r.get(32));
    BitString code;
    code.bytes = r.get_bytes(tree_bytes);
    code.bit_len = tree_bytes * 8;
    // the tree code was padded to a byte boundary; recover the exact bit
    // length from the count fields before decoding
    {
        BitReader probe(code);
        const int cw = ceil_log2(uint64_t(out.delta) + 1);
        const int iw = ceil_log2(uint64_t(out.delta));
        int qj = 1;
        size_t count_fields = 0, index_fields = 0;
        for (int j = 0; j <= out.h; ++j) {
            int next = 0;
            for (int t = 0; t < qj; ++t) next += int(probe.get(cw));
            count_fields += size_t(qj);
            if (j > 0) index_fields += size_t(qj);
            qj = next;
        }
        size_t bits_used = count_fields * cw + index_fields * iw;
        code.bit_len = bits_used;
        if ((bits_used + 7) / 8 != tree_bytes) throw CodecError("tree length mismatch");
    }
    out.tree = decode_tree(code, out.delta, out.h);
    out.decisions.resize(out.tree.nodes.size());
    for (auto& d : out.decisions) d = uint8_t(r.get(1));
    if (r.remaining() >= 8) throw CodecError("oversized label");
    return out;
}

}  // namespace detail

/// Decodes adjacency from two labels of the same build: the decision bit of
/// the deepest node of T^u that is an ancestor of v's identifier.
inline bool decode_adjacency(const Label& lu, const Label& lv) {
    auto pu = detail::parse_label(lu, true);
    auto pv = detail::parse_label(lv, false);
    if (pu.m != pv.m || pu.delta != pv.delta || pu.h != pv.h)
        throw InputError("labels come from different builds");
    if (pu.h == 0) throw InputError("single-vertex labels carry no adjacency");
    // walk down the identifier while prefixes stay in T^u
    int best = -1;
    std::vector<int> prefix;
    for (int len = 0; len <= pu.h; ++len) {
        auto it = std::lower_bound(pu.tree.nodes.begin(), pu.tree.nodes.end(), prefix);
        if (it == pu.tree.nodes.end() || *it != prefix) break;
        best = int(it - pu.tree.nodes.begin());
        if (len < pu.h) prefix.push_back(pv.identifier[len]);
    }
    if (best < 0) throw CodecError("touched tree lost its root");
    return pu.decisions[best] != 0;
}

}  // namespace mw
