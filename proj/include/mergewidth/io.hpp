#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "generators.hpp"
#include "merge_seq.hpp"
#include "width.hpp"

namespace mw {

using json = nlohmann::json;

/// graph6 encoding (undirected, no loops); n up to 2^16.
inline std::string write_graph6(const Graph& g) {
    const int n = g.size();
    std::string s;
    if (n <= 62) {
        s.push_back(char(n + 63));
    } else {
        s.push_back(126);
        s.push_back(char(((n >> 12) & 63) + 63));
        s.push_back(char(((n >> 6) & 63) + 63));
        s.push_back(char((n & 63) + 63));
    }
    int bit = 5;
    char cur = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (g.adjacent(i, j)) cur |= char(1 << bit);
            if (--bit < 0) {
                s.push_back(char(cur + 63));
                cur = 0;
                bit = 5;
            }
        }
    if (bit != 5) s.push_back(char(cur + 63));
    return s;
}

inline Graph read_graph6(const std::string& s) {
    size_t pos = 0;
    auto need = [&](size_t k) {
        if (pos + k > s.size()) throw InputError("graph6: truncated input");
    };
    need(1);
    int n;
    if (s[pos] == 126) {
        need(4);
        n = ((s[pos + 1] - 63) << 12) | ((s[pos + 2] - 63) << 6) | (s[pos + 3] - 63);
        pos += 4;
    } else {
        n = s[pos] - 63;
        ++pos;
    }
    if (n < 0 || n > (1 << 16)) throw InputError("graph6: vertex count out of range");
    Graph g(n);
    int bit = 5;
    int cur = 0;
    auto next_bit = [&]() {
        if (bit == 5) {
            need(1);
            cur = s[pos++] - 63;
            if (cur < 0 || cur > 63) throw InputError("graph6: bad character");
        }
        int b = (cur >> bit) & 1;
        bit = bit == 0 ? 5 : bit - 1;
        return b;
    };
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (next_bit()) g.add_edge(i, j);
    return g;
}

/// Whitespace edge list: "n m" header then m lines "u v", 0-based.
inline Graph read_edge_list(std::istream& in) {
    int n, m;
    if (!(in >> n >> m)) throw InputError("edge list: missing header");
    if (n < 0 || m < 0) throw InputError("edge list: bad header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw InputError("edge list: truncated");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw InputError("edge list: bad edge");
        g.add_edge(u, v);
    }
    return g;
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
    auto edges = g.edges();
    out << g.size() << " " << edges.size() << "\n";
    for (auto [u, v] : edges) out << u << " " << v << "\n";
}

/// FNV-1a over the canonical serialization; binds certificates to instances.
inline std::string graph_hash(const Graph& g) {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&](uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(uint64_t(g.size()));
    for (auto [u, v] : g.edges()) mix((uint64_t(u) << 32) | uint64_t(v));
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return json{{"n", g.size()}, {"edges", edges}};
}

inline Graph graph_from_json(const json& j) {
    Graph g(j.at("n").get<int>());
    for (auto& e : j.at("edges")) {
        int u = e.at(0).get<int>(), v = e.at(1).get<int>();
        if (u < 0 || v < 0 || u >= g.size() || v >= g.size() || u == v)
            throw InputError("json graph: bad edge");
        g.add_edge(u, v);
    }
    return g;
}

inline json partition_to_json(const Partition& p) {
    json parts = json::array();
    for (int a = 0; a < p.count(); ++a) parts.push_back(p.part(a).to_vector());
    return parts;
}

inline Partition partition_from_json(const json& j, int n) {
    std::vector<std::vector<int>> groups;
    for (auto& part : j) groups.push_back(part.get<std::vector<int>>());
    return Partition::from_parts(n, groups);
}

inline json merge_to_json(const MergeSequence& seq) {
    json steps = json::array();
    for (auto& st : seq.steps) {
        json pairs = json::array();
        for (auto [u, v] : st.resolved.pairs()) pairs.push_back({u, v});
        steps.push_back({{"parts", partition_to_json(st.partition)}, {"resolved", pairs}});
    }
    return json{{"steps", steps}};
}

inline MergeSequence merge_from_json(const json& j, int n) {
    MergeSequence seq;
    for (auto& st : j.at("steps")) {
        MergeStep step{partition_from_json(st.at("parts"), n), ResolvedSet(n)};
        for (auto& pr : st.at("resolved")) step.resolved.add(pr.at(0).get<int>(), pr.at(1).get<int>());
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

inline json transient_to_json(const TransientSequence& seq) {
    json steps = json::array();
    for (auto& st : seq.steps) {
        json flips = json::array();
        for (auto [a, b] : st.flip.flipped) flips.push_back({a, b});
        steps.push_back({{"parts", partition_to_json(st.partition)}, {"flips", flips}});
    }
    return json{{"steps", steps}};
}

inline TransientSequence transient_from_json(const json& j, const Graph& g) {
    TransientSequence seq;
    for (auto& st : j.at("steps")) {
        TransientStep step;
        step.partition = partition_from_json(st.at("parts"), g.size());
        for (auto& pr : st.at("flips"))
            step.flip.flipped.emplace_back(pr.at(0).get<int>(), pr.at(1).get<int>());
        step.flip.normalize();
        step.flipped = apply_flip(g, step.partition, step.flip);
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

inline json chain_to_json(const PartitionChain& chain) {
    json parts = json::array();
    for (auto& p : chain.seq) parts.push_back(partition_to_json(p));
    return json{{"partitions", parts}};
}

inline PartitionChain chain_from_json(const json& j, int n) {
    PartitionChain chain;
    for (auto& p : j.at("partitions")) chain.seq.push_back(partition_from_json(p, n));
    return chain;
}

inline json instance_to_json(const CertifiedInstance& inst) {
    json j{{"schema", 1},
           {"type", "instance"},
           {"name", inst.name},
           {"graph", graph_to_json(inst.graph)},
           {"hash", graph_hash(inst.graph)}};
    json certs = json::object();
    if (inst.merge) certs["merge"] = merge_to_json(*inst.merge);
    if (inst.transient) certs["transient"] = transient_to_json(*inst.transient);
    if (inst.chain) certs["chain"] = chain_to_json(*inst.chain);
    if (inst.order) certs["order"] = inst.order->order;
    j["certificates"] = certs;
    if (!inst.claimed_widths.empty()) j["claimed_widths"] = inst.claimed_widths;
    return j;
}

inline CertifiedInstance instance_from_json(const json& j) {
    if (j.value("schema", 0) != 1) throw InputError("unsupported schema version");
    CertifiedInstance inst;
    inst.name = j.value("name", "");
    inst.graph = graph_from_json(j.at("graph"));
    if (j.contains("hash") && j.at("hash").get<std::string>() != graph_hash(inst.graph))
        throw InputError("instance hash does not match the graph");
    if (j.contains("certificates")) {
        const json& certs = j.at("certificates");
        if (certs.contains("merge"))
            inst.merge = merge_from_json(certs.at("merge"), inst.graph.size());
        if (certs.contains("transient"))
            inst.transient = transient_from_json(certs.at("transient"), inst.graph);
        if (certs.contains("chain"))
            inst.chain = chain_from_json(certs.at("chain"), inst.graph.size());
        if (certs.contains("order")) {
            VertexOrder order;
            order.order = certs.at("order").get<std::vector<int>>();
            order.validate(inst.graph.size());
            inst.order = order;
        }
    }
    if (j.contains("claimed_widths"))
        inst.claimed_widths = j.at("claimed_widths").get<std::map<std::string, int>>();
    return inst;
}

inline json width_report_to_json(const WidthReport& rep, const Graph* g = nullptr) {
    json j{{"schema", 1},
           {"type", "width_report"},
           {"variant", rep.variant},
           {"value", rep.value},
           {"mode", to_string(rep.mode)}};
    if (rep.radius >= kInf) j["radius"] = "inf";
    else j["radius"] = rep.radius;
    if (g) j["hash"] = graph_hash(*g);
    if (rep.merge_witness) j["witness"] = merge_to_json(*rep.merge_witness);
    if (rep.transient_witness) j["witness"] = transient_to_json(*rep.transient_witness);
    if (rep.chain_witness) j["witness"] = chain_to_json(*rep.chain_witness);
    if (rep.order_witness) j["witness"] = rep.order_witness->order;
    return j;
}

inline json verify_report_to_json(const VerifyReport& rep) {
    json v = json::array();
    for (auto& viol : rep.violations)
        v.push_back({{"clause", viol.clause}, {"step", viol.step}, {"detail", viol.detail}});
    return json{{"schema", 1}, {"type", "verify_report"}, {"ok", rep.ok()}, {"violations", v}};
}

}  // namespace mw
