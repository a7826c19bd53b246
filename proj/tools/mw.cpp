// mw: merge-width toolkit command line.
//
// Subcommands: generate, verify, width, oracle, approx, convert, quotient,
// cover, label, query, bench. All reports are JSON on stdout; diagnostics go
// to stderr. Identical inputs and configuration produce byte-identical
// output.

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mergewidth/applications.hpp"
#include "mergewidth/approx.hpp"
#include "mergewidth/complexity.hpp"
#include "mergewidth/conversions.hpp"
#include "mergewidth/io.hpp"
#include "mergewidth/labelling.hpp"
#include "mergewidth/oracle.hpp"

using namespace mw;

namespace {

RunConfig g_cfg;

void load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    json j = json::parse(in);
    if (j.contains("flip_exact_cap")) g_cfg.flip_exact_cap = j["flip_exact_cap"].get<int>();
    if (j.contains("oracle_budget")) g_cfg.oracle_budget = j["oracle_budget"].get<int>();
    if (j.contains("dp_budget")) g_cfg.dp_budget = j["dp_budget"].get<int>();
    if (j.contains("vc_budget")) g_cfg.vc_budget = j["vc_budget"].get<int>();
    if (j.contains("pi_exact_m")) g_cfg.pi_exact_m = j["pi_exact_m"].get<int>();
    if (j.contains("pi_exact_n")) g_cfg.pi_exact_n = j["pi_exact_n"].get<int>();
    if (j.contains("sample_flips")) g_cfg.sample_flips = j["sample_flips"].get<int>();
    if (j.contains("greedy_restarts")) g_cfg.greedy_restarts = j["greedy_restarts"].get<int>();
    if (j.contains("seed")) g_cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("radii")) g_cfg.radii = j["radii"].get<std::vector<int>>();
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CertifiedInstance read_instance(const std::string& path, const std::string& format) {
    std::string text = slurp(path);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty input");
    std::string fmt = format;
    if (fmt == "auto") {
        if (text[first] == '{') fmt = "json";
        else if (path.size() > 3 && path.substr(path.size() - 3) == ".g6") fmt = "graph6";
        else if (path.size() > 5 && path.substr(path.size() - 5) == ".json") fmt = "json";
        else if (path.size() > 3 && path.substr(path.size() - 3) == ".el") fmt = "edges";
        else fmt = std::isdigit(static_cast<unsigned char>(text[first])) ? "edges" : "graph6";
    }
    CertifiedInstance inst;
    if (fmt == "json") {
        inst = instance_from_json(json::parse(text));
    } else if (fmt == "graph6") {
        std::istringstream is(text);
        std::string line;
        std::getline(is, line);
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        inst.graph = read_graph6(line);
        inst.name = "graph6";
    } else if (fmt == "edges") {
        std::istringstream is(text);
        inst.graph = read_edge_list(is);
        inst.name = "edge_list";
    } else {
        throw InputError("unknown format: " + fmt);
    }
    return inst;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << j.dump(2) << "\n";
    }
}

int parse_radius(const std::string& s) {
    if (s == "inf") return kInf;
    return std::stoi(s);
}

EvalMode parse_mode(const std::string& s) {
    if (s == "exact") return EvalMode::Exact;
    if (s == "sampled") return EvalMode::Sampled;
    if (s == "auto") return EvalMode::Auto;
    throw InputError("unknown mode: " + s);
}

json oracle_row(const Graph& g, int r, const RunConfig& cfg) {
    json row{{"graph6", write_graph6(g)}, {"n", g.size()}, {"r", r}};
    row["mw"] = exact_width(g, Variant::MW, r, cfg).value;
    row["tmw"] = exact_width(g, Variant::TMW, r, cfg).value;
    row["pmw"] = exact_width(g, Variant::PMW, r, cfg).value;
    row["dmw"] = exact_width(g, Variant::DMW, r, cfg).value;
    return row;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"merge-width toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("MW_CONFIG")) config_path = env;
    app.add_option("--config", config_path, "JSON config file (or MW_CONFIG)");
    app.add_option("--seed", g_cfg.seed, "PRNG seed for sampled modes and generators");
    app.add_option("--exact-cap", g_cfg.flip_exact_cap, "exact flip enumeration part cap");
    app.add_option("--dp-cap", g_cfg.dp_budget, "subset-DP vertex budget");
    app.add_option("--oracle-cap", g_cfg.oracle_budget, "exhaustive oracle vertex budget");

    std::string out_path;
    app.add_option("-o,--output", out_path, "output file (default stdout)");

    auto* gen = app.add_subcommand("generate", "emit a graph family instance as JSON");
    std::string family;
    std::vector<std::string> gen_args;
    gen->add_option("family", family,
                    "cograph|path|cycle|grid|complete|empty|gnp|cubic|cocubic|vector-bipartite")
        ->required();
    gen->add_option("args", gen_args, "family parameters");

    auto* ver = app.add_subcommand("verify", "verify the certificates of an instance");
    std::string in_path = "-", in_format = "auto";
    ver->add_option("input", in_path, "instance file or - for stdin");
    ver->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* wid = app.add_subcommand("width", "evaluate a certificate's width");
    std::string variant = "mw", radius_str = "1", mode_str = "auto";
    wid->add_option("--variant", variant, "mw|tmw|pmw|dmw")->required();
    wid->add_option("-r,--radius", radius_str, "radius (integer or inf)");
    wid->add_option("--mode", mode_str, "exact|sampled|auto");
    wid->add_option("input", in_path, "instance file or - for stdin");
    wid->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* ora = app.add_subcommand("oracle", "exhaustive widths for tiny graphs");
    int oracle_n = 0;
    ora->add_option("--n", oracle_n, "run over all graphs on n vertices up to isomorphism");
    ora->add_option("-r,--radius", radius_str, "radius (integer or inf)");
    ora->add_option("input", in_path, "single-graph input when --n is absent");
    ora->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* apx = app.add_subcommand("approx", "2^n subset-DP approximation pipeline");
    apx->add_option("-r,--radius", radius_str, "radius");
    apx->add_option("input", in_path, "graph or instance input");
    apx->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* cnv = app.add_subcommand("convert", "chain->merge or merge->definable order");
    std::string target = "merge";
    cnv->add_option("--to", target, "merge|order")->required();
    cnv->add_option("-r,--radius", radius_str, "radius used by the order construction");
    cnv->add_option("input", in_path, "instance input");
    cnv->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* quo = app.add_subcommand("quotient", "sparse quotient certificate");
    quo->add_option("input", in_path, "instance with a merge certificate");
    quo->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* cov = app.add_subcommand("cover", "neighbourhood cover via the sparse quotient");
    cov->add_option("input", in_path, "instance with a merge certificate");
    cov->add_option("--format", in_format, "auto|json|graph6|edges");

    auto* lab = app.add_subcommand("label", "build adjacency labels");
    std::string labels_path = "labels.bin", manifest_path;
    lab->add_option("input", in_path, "instance with a merge certificate");
    lab->add_option("--format", in_format, "auto|json|graph6|edges");
    lab->add_option("--labels", labels_path, "binary label output file");
    lab->add_option("--manifest", manifest_path, "manifest JSON output (default stdout)");

    auto* qry = app.add_subcommand("query", "decode adjacency from a label file");
    std::string qfile;
    int qu = 0, qv = 0;
    qry->add_option("labels", qfile, "binary label file")->required();
    qry->add_option("u", qu, "first vertex")->required();
    qry->add_option("v", qv, "second vertex")->required();

    auto* ben = app.add_subcommand("bench", "time the approximation DP");
    std::vector<int> sizes{12, 14};
    ben->add_option("--sizes", sizes, "graph sizes to time");
    ben->add_option("-r,--radius", radius_str, "radius");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) load_config_file(config_path);

        if (gen->parsed()) {
            auto arg_int = [&](size_t i) {
                if (i >= gen_args.size()) throw InputError("missing generator argument");
                return std::stoi(gen_args[i]);
            };
            CertifiedInstance inst;
            if (family == "cograph") inst = universal_cograph(arg_int(0));
            else if (family == "path") inst.graph = path_graph(arg_int(0));
            else if (family == "cycle") inst.graph = cycle_graph(arg_int(0));
            else if (family == "grid") inst.graph = grid_graph(arg_int(0), arg_int(1));
            else if (family == "complete") inst.graph = complete_graph(arg_int(0));
            else if (family == "empty") inst.graph = empty_graph(arg_int(0));
            else if (family == "gnp")
                inst.graph = gnp(arg_int(0), std::stod(gen_args.at(1)), g_cfg.seed);
            else if (family == "cubic") inst.graph = random_cubic(arg_int(0), g_cfg.seed);
            else if (family == "cocubic")
                inst.graph = random_cubic(arg_int(0), g_cfg.seed).complement();
            else if (family == "vector-bipartite") inst.graph = vector_bipartite(arg_int(0));
            else throw InputError("unknown family: " + family);
            if (inst.name.empty()) inst.name = family;
            emit(instance_to_json(inst), out_path);
            return 0;
        }

        if (ver->parsed()) {
            auto inst = read_instance(in_path, in_format);
            json out{{"schema", 1}, {"type", "verify_report"}, {"hash", graph_hash(inst.graph)}};
            bool ok = true;
            if (inst.merge) {
                auto rep = verify_merge(inst.graph, *inst.merge);
                out["merge"] = verify_report_to_json(rep);
                ok &= rep.ok();
            }
            if (inst.transient) {
                auto rep = verify_transient(inst.graph, *inst.transient);
                out["transient"] = verify_report_to_json(rep);
                ok &= rep.ok();
            }
            if (inst.chain) {
                try {
                    inst.chain->validate();
                    out["chain"] = json{{"ok", true}};
                } catch (const InputError& e) {
                    out["chain"] = json{{"ok", false}, {"error", e.what()}};
                    ok = false;
                }
            }
            if (inst.order) out["order"] = json{{"ok", true}};  // validated on parse
            out["ok"] = ok;
            emit(out, out_path);
            return ok ? 0 : 1;
        }

        if (wid->parsed()) {
            auto inst = read_instance(in_path, in_format);
            int r = parse_radius(radius_str);
            int eff_r = r >= kInf ? std::max(0, inst.graph.size() - 1) : r;
            EvalMode mode = parse_mode(mode_str);
            WidthReport rep;
            if (variant == "mw") {
                if (!inst.merge) throw InputError("width mw needs a merge certificate");
                if (!verify_merge(inst.graph, *inst.merge).ok())
                    throw InputError("merge certificate does not verify");
                rep = width_merge_report(inst.graph, *inst.merge, eff_r);
            } else if (variant == "tmw") {
                if (!inst.transient) throw InputError("width tmw needs a transient certificate");
                if (!verify_transient(inst.graph, *inst.transient).ok())
                    throw InputError("transient certificate does not verify");
                rep = transient_width_report(inst.graph, *inst.transient, eff_r);
            } else if (variant == "pmw") {
                if (!inst.chain) throw InputError("width pmw needs a chain certificate");
                rep = partition_width(inst.graph, *inst.chain, eff_r, mode, g_cfg);
            } else if (variant == "dmw") {
                if (!inst.order) throw InputError("width dmw needs an order certificate");
                rep = definable_width(inst.graph, *inst.order, eff_r, mode, g_cfg);
            } else {
                throw InputError("unknown variant: " + variant);
            }
            if (r >= kInf) rep.radius = kInf;
            json out = width_report_to_json(rep, &inst.graph);
            out.erase("witness");  // the certificate came from the caller
            emit(out, out_path);
            return 0;
        }

        if (ora->parsed()) {
            int r = parse_radius(radius_str);
            json rows = json::array();
            if (oracle_n > 0) {
                for (auto& g : canonical_graphs(oracle_n)) {
                    int eff_r = r >= kInf ? std::max(0, g.size() - 1) : r;
                    rows.push_back(oracle_row(g, eff_r, g_cfg));
                }
            } else {
                auto inst = read_instance(in_path, in_format);
                int eff_r = r >= kInf ? std::max(0, inst.graph.size() - 1) : r;
                rows.push_back(oracle_row(inst.graph, eff_r, g_cfg));
            }
            json out{{"schema", 1}, {"type", "oracle_table"}, {"rows", rows}};
            if (r >= kInf) out["radius"] = "inf";
            else out["radius"] = r;
            emit(out, out_path);
            return 0;
        }

        if (apx->parsed()) {
            auto inst = read_instance(in_path, in_format);
            int r = parse_radius(radius_str);
            auto res = approx_merge_width(inst.graph, r, g_cfg);
            json weights = json::array();
            for (int w : res.path.weights) weights.push_back(w);
            json subsets = json::array();
            for (auto& s : res.path.subsets) subsets.push_back(s.to_vector());
            json out{{"schema", 1},
                     {"type", "approx_report"},
                     {"hash", graph_hash(inst.graph)},
                     {"radius", r},
                     {"bottleneck", res.bottleneck},
                     {"path", {{"subsets", subsets}, {"weights", weights}}},
                     {"transient", transient_to_json(res.transient)},
                     {"merge", merge_to_json(res.merged)},
                     {"transient_width", transient_width(inst.graph, res.transient, r)},
                     {"merge_width", width_merge(inst.graph, res.merged, r)},
                     {"firmness", firmness(inst.graph, res.merged)}};
            emit(out, out_path);
            return 0;
        }

        if (cnv->parsed()) {
            auto inst = read_instance(in_path, in_format);
            int r = parse_radius(radius_str);
            if (target == "merge") {
                if (!inst.chain) throw InputError("convert --to merge needs a chain certificate");
                inst.merge = chain_to_merge(inst.graph, *inst.chain);
            } else if (target == "order") {
                if (!inst.merge) throw InputError("convert --to order needs a merge certificate");
                inst.order = build_definable_order(inst.graph, *inst.merge,
                                                   r >= kInf ? inst.graph.size() : r);
            } else {
                throw InputError("unknown conversion target: " + target);
            }
            emit(instance_to_json(inst), out_path);
            return 0;
        }

        if (quo->parsed() || cov->parsed()) {
            auto inst = read_instance(in_path, in_format);
            if (!inst.merge) throw InputError("needs a merge certificate");
            auto cert = sparse_quotient(inst.graph, *inst.merge, g_cfg.radii);
            json cols = json::object();
            for (auto& [r, sw] : cert.columns)
                cols[std::to_string(r)] = {{"scol", sw.first}, {"wcol", sw.second}};
            auto qi = verify_quasi_isometry(inst.graph, cert.partition, 13, 12);
            json out{{"schema", 1},
                     {"type", quo->parsed() ? "quotient_certificate" : "cover_report"},
                     {"hash", graph_hash(inst.graph)},
                     {"partition", partition_to_json(cert.partition)},
                     {"part_order", cert.part_order.order},
                     {"quotient_graph6", write_graph6(cert.quotient)},
                     {"weak_diameter", cert.weak_diameter},
                     {"colouring_numbers", cols},
                     {"firm", cert.firm_bound},
                     {"quasi_isometry_13_12", qi.ok}};
            if (cov->parsed()) {
                auto built = build_cover(inst.graph, cert.partition, cert.part_order);
                json clusters = json::array();
                for (auto& c : built.lifted.clusters) clusters.push_back(c.to_vector());
                auto rep = verify_cover(inst.graph, built.lifted, 38, inst.graph.size());
                out["clusters"] = clusters;
                out["centers"] = built.lifted.centers;
                out["cover_ok_radius38"] = rep.ok();
                out["overlap"] = rep.overlap;
            }
            emit(out, out_path);
            return 0;
        }

        if (lab->parsed()) {
            auto inst = read_instance(in_path, in_format);
            if (!inst.merge) throw InputError("label needs a merge certificate");
            auto labels = build_labels(inst.graph, *inst.merge);
            std::ofstream bin(labels_path, std::ios::binary);
            if (!bin) throw InputError("cannot write labels file");
            auto put32 = [&](uint32_t x) {
                for (int i = 3; i >= 0; --i) bin.put(char((x >> (8 * i)) & 0xff));
            };
            put32(uint32_t(labels.size()));
            size_t max_bits = 0;
            for (auto& l : labels) {
                put32(uint32_t(l.bytes.size()));
                bin.write(reinterpret_cast<const char*>(l.bytes.data()),
                          std::streamsize(l.bytes.size()));
                max_bits = std::max(max_bits, l.bytes.size() * 8);
            }
            json manifest{{"schema", 1},
                          {"type", "label_manifest"},
                          {"hash", graph_hash(inst.graph)},
                          {"n", inst.graph.size()},
                          {"m", inst.merge->length()},
                          {"delta", std::max(1, valency_of(*inst.merge))},
                          {"k", width_merge(inst.graph, *inst.merge, 1)},
                          {"max_label_bits", max_bits},
                          {"labels_file", labels_path}};
            emit(manifest, manifest_path.empty() ? out_path : manifest_path);
            return 0;
        }

        if (qry->parsed()) {
            std::ifstream bin(qfile, std::ios::binary);
            if (!bin) throw InputError("cannot open labels file");
            auto get32 = [&]() {
                uint32_t x = 0;
                for (int i = 0; i < 4; ++i) {
                    int c = bin.get();
                    if (c < 0) throw InputError("labels file truncated");
                    x = (x << 8) | uint32_t(c);
                }
                return x;
            };
            uint32_t count = get32();
            if (uint32_t(qu) >= count || uint32_t(qv) >= count || qu == qv)
                throw InputError("vertex out of range");
            std::vector<Label> labels(count);
            for (uint32_t i = 0; i < count; ++i) {
                uint32_t len = get32();
                labels[i].bytes.resize(len);
                bin.read(reinterpret_cast<char*>(labels[i].bytes.data()), len);
                if (!bin) throw InputError("labels file truncated");
            }
            bool adj = decode_adjacency(labels[qu], labels[qv]);
            emit(json{{"schema", 1}, {"type", "query"}, {"u", qu}, {"v", qv}, {"adjacent", adj}},
                 out_path);
            return 0;
        }

        if (ben->parsed()) {
            int r = parse_radius(radius_str);
            json runs = json::array();
            for (int n : sizes) {
                Graph g = gnp(n, 0.5, g_cfg.seed);
                auto start = std::chrono::steady_clock::now();
                auto res = approx_merge_width(g, r, g_cfg);
                double secs =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
                runs.push_back({{"n", n}, {"seconds", secs}, {"bottleneck", res.bottleneck}});
            }
            emit(json{{"schema", 1}, {"type", "bench"}, {"radius", r}, {"runs", runs}}, out_path);
            return 0;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
