#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetadom/bench.hpp"
#include "zetadom/elimination.hpp"
#include "zetadom/generators.hpp"
#include "zetadom/graph.hpp"
#include "zetadom/nice_tree.hpp"
#include "zetadom/solver.hpp"
#include "zetadom/table_dp.hpp"
#include "zetadom/tree_decomposition.hpp"

namespace zetadom {

using OrderedJson = nlohmann::ordered_json;

namespace cli_detail {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline GraphParseResult load_graph(const std::string& path, const std::string& format) {
    std::istringstream in(slurp(path));
    if (format == "gr") return parse_graph(in, GraphFormat::PaceGr);
    if (format == "dimacs") return parse_graph(in, GraphFormat::DimacsEdge);
    return parse_graph_auto(in);
}

inline ElimStrategy strategy_of(const std::string& s) {
    if (s == "min-degree") return ElimStrategy::MinDegree;
    return ElimStrategy::MinFill;
}

struct Prepared {
    Graph g;
    TreeDecomposition td;
    NiceTree nt;
    std::vector<std::string> warnings;
};

// Loads the graph, then either validates the supplied decomposition or
// constructs one heuristically, and converts to the nice form.
inline Prepared prepare(const std::string& graph_path, const std::string& format,
                        const std::string& td_path, const std::string& strategy,
                        std::ostream& err) {
    Prepared p;
    auto gr = load_graph(graph_path, format);
    p.g = std::move(gr.graph);
    p.warnings = std::move(gr.warnings);
    if (!td_path.empty()) {
        std::istringstream in(slurp(td_path));
        auto tdres = parse_td(in);
        for (auto& w : tdres.warnings) p.warnings.push_back(w);
        if (tdres.declared_n != p.g.n)
            p.warnings.push_back("decomposition declares n=" + std::to_string(tdres.declared_n) +
                                 ", graph has n=" + std::to_string(p.g.n));
        p.td = std::move(tdres.td);
        TdReport rep = validate_td(p.g, p.td);
        if (!rep.ok()) {
            for (auto& v : rep.violations) err << "invalid decomposition: " << v << "\n";
            throw std::runtime_error("supplied decomposition does not validate against the graph");
        }
    } else {
        p.td = decompose_heuristic(p.g, strategy_of(strategy));
    }
    p.nt = make_nice(p.td, p.g);
    for (auto& w : p.warnings) err << "warning: " << w << "\n";
    return p;
}

inline std::string ring_default() {
    const char* env = std::getenv("ZETADOM_RING");
    if (env && std::string(env) == "modular") return "modular";
    return "exact";
}

inline void print_json(const OrderedJson& j, std::ostream& out) { out << j.dump(2) << "\n"; }

} // namespace cli_detail

// Dispatches one CLI invocation. Exit codes: 0 success, 1 runtime/validation
// failure, 2 usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum dominating set via polynomial-space zeta-domain DP over nice tree decompositions"};
    app.require_subcommand(1);

    std::string graph_path, td_path, format = "auto", strategy = "min-fill";
    std::string mode = "zeta", ring;
    std::uint64_t seed = 1;
    bool as_json = false, meter_flag = false;

    auto add_common = [&](CLI::App* c, bool with_mode) {
        c->add_option("--graph", graph_path, "graph file (.gr PACE or DIMACS edge)")->required();
        c->add_option("--format", format, "graph format: gr|dimacs|auto")
            ->check(CLI::IsMember({"gr", "dimacs", "auto"}));
        c->add_option("--td", td_path, "tree decomposition file (.td); constructed if absent");
        c->add_option("--strategy", strategy, "decomposition heuristic: min-fill|min-degree")
            ->check(CLI::IsMember({"min-fill", "min-degree"}));
        if (with_mode)
            c->add_option("--mode", mode, "algorithm: zeta|table|brute")
                ->check(CLI::IsMember({"zeta", "table", "brute"}));
        c->add_option("--ring", ring, "coefficient ring: exact|modular")
            ->check(CLI::IsMember({"exact", "modular"}));
        c->add_option("--seed", seed, "seed for the modular prime draw");
        c->add_flag("--json", as_json, "machine-readable output");
        c->add_flag("--meter", meter_flag, "include meter detail in text output");
    };

    auto* c_solve = app.add_subcommand("solve", "minimum dominating set size");
    add_common(c_solve, true);
    auto* c_count = app.add_subcommand("count", "count dominating sets of every size");
    add_common(c_count, true);
    auto* c_witness = app.add_subcommand("witness", "produce a minimum dominating set");
    add_common(c_witness, false);
    auto* c_decompose = app.add_subcommand("decompose", "emit a PACE .td decomposition");
    c_decompose->add_option("--graph", graph_path)->required();
    c_decompose->add_option("--format", format)->check(CLI::IsMember({"gr", "dimacs", "auto"}));
    c_decompose->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"min-fill", "min-degree"}));
    auto* c_normalize = app.add_subcommand("normalize", "emit the nice-tree debug form");
    c_normalize->add_option("--graph", graph_path)->required();
    c_normalize->add_option("--format", format)->check(CLI::IsMember({"gr", "dimacs", "auto"}));
    c_normalize->add_option("--td", td_path);
    c_normalize->add_option("--strategy", strategy)
        ->check(CLI::IsMember({"min-fill", "min-degree"}));
    auto* c_validate = app.add_subcommand("validate", "check a .gr/.td pair");
    c_validate->add_option("--graph", graph_path)->required();
    c_validate->add_option("--format", format)->check(CLI::IsMember({"gr", "dimacs", "auto"}));
    c_validate->add_option("--td", td_path)->required();
    c_validate->add_flag("--json", as_json);
    auto* c_oracle = app.add_subcommand("oracle", "brute-force size counts (n <= 25)");
    c_oracle->add_option("--graph", graph_path)->required();
    c_oracle->add_option("--format", format)->check(CLI::IsMember({"gr", "dimacs", "auto"}));
    c_oracle->add_flag("--json", as_json);

    auto* c_bench = app.add_subcommand("bench", "benchmark harness, CSV rows on stdout");
    BenchConfig bcfg;
    std::string modes_csv = "zeta,table";
    c_bench->add_option("--family", bcfg.family, "path|cycle|grid|ktree")->required();
    c_bench->add_option("--n-from", bcfg.n_from);
    c_bench->add_option("--n-to", bcfg.n_to);
    c_bench->add_option("--n-step", bcfg.n_step);
    c_bench->add_option("--k", bcfg.k, "ktree clique size");
    c_bench->add_option("--depth-cap", bcfg.depth_cap, "ktree construction depth cap");
    c_bench->add_option("--drop", bcfg.drop_permille, "ktree edge drop rate (permille)");
    c_bench->add_option("--rows", bcfg.rows, "grid rows (n sweeps columns)");
    c_bench->add_option("--seed-from", bcfg.seed_from);
    c_bench->add_option("--seed-to", bcfg.seed_to);
    c_bench->add_option("--modes", modes_csv, "comma-separated: zeta,table,brute");
    c_bench->add_option("--ring", ring)->check(CLI::IsMember({"exact", "modular"}));
    c_bench->add_option("--seed", seed, "seed for the modular prime draw");

    std::vector<const char*> argv;
    argv.push_back("zetadom");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    if (ring.empty()) ring = cli_detail::ring_default();

    try {
        if (*c_solve || *c_count || *c_witness) {
            const bool counting = static_cast<bool>(*c_count);
            if (counting && ring == "modular") {
                err << "usage error: count requires the exact ring (counts must be exact)\n";
                return 2;
            }
            if (counting && mode == "table") {
                err << "usage error: count supports --mode zeta or --mode brute\n";
                return 2;
            }
            auto t0 = std::chrono::steady_clock::now();
            Graph g_only;
            cli_detail::Prepared prep;
            if (mode == "brute" && td_path.empty()) {
                auto gr = cli_detail::load_graph(graph_path, format);
                g_only = std::move(gr.graph);
                for (auto& w : gr.warnings) err << "warning: " << w << "\n";
            } else {
                prep = cli_detail::prepare(graph_path, format, td_path, strategy, err);
                g_only = prep.g;
            }
            const Graph& g = g_only;

            OrderedJson j;
            j["command"] = *c_solve ? "solve" : (counting ? "count" : "witness");
            j["graph"] = graph_path;
            j["n"] = g.n;
            j["m"] = g.m();

            if (*c_solve) {
                j["mode"] = mode;
                j["ring"] = mode == "zeta" ? ring : "exact";
                long long answer = -1;
                MeterReport meter{};
                int w = -1, d = 0, bd = 0;
                if (mode == "brute") {
                    auto v = brute_force_counts(g);
                    ExactRing r;
                    answer = v.first_nonzero(r);
                    meter.peak_slots = static_cast<long long>(v.size());
                    meter.evaluations = 1ll << g.n;
                } else if (mode == "table") {
                    answer = table_dp_min(prep.nt, g, &meter);
                    w = prep.nt.width;
                    d = prep.nt.depth;
                    bd = prep.nt.branching_depth;
                } else {
                    if (ring == "modular") answer = solve_min_modular(prep.nt, g, seed, &meter);
                    else answer = solve_min_exact(prep.nt, g, &meter);
                    w = prep.nt.width;
                    d = prep.nt.depth;
                    bd = prep.nt.branching_depth;
                }
                auto t1 = std::chrono::steady_clock::now();
                j["width"] = w;
                j["depth"] = d;
                j["branching_depth"] = bd;
                j["min_dominating_set_size"] = answer;
                j["peak_slots"] = meter.peak_slots;
                j["evaluations"] = meter.evaluations;
                j["wall_time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
                if (as_json) {
                    cli_detail::print_json(j, out);
                } else {
                    out << "min_dominating_set_size " << answer << "\n";
                    out << "width " << w << "\ndepth " << d << "\nbranching_depth " << bd << "\n";
                    out << "peak_slots " << meter.peak_slots << "\nevaluations "
                        << meter.evaluations << "\n";
                    if (meter_flag) out << "live_slots " << meter.live_slots << "\n";
                    out << "wall_time_ms " << j["wall_time_ms"].get<double>() << "\n";
                }
            } else if (counting) {
                j["mode"] = mode;
                CoeffVector<BigInt> counts;
                MeterReport meter{};
                int w = -1, d = 0;
                if (mode == "brute") {
                    counts = brute_force_counts(g);
                    meter.peak_slots = static_cast<long long>(counts.size());
                } else {
                    ZetaSolver<ExactRing> solver(prep.nt, g);
                    counts = solver.counts_at_root();
                    meter = solver.meter_report();
                    w = prep.nt.width;
                    d = prep.nt.depth;
                }
                auto t1 = std::chrono::steady_clock::now();
                ExactRing r;
                j["width"] = w;
                j["depth"] = d;
                j["min_dominating_set_size"] = counts.first_nonzero(r);
                std::vector<std::string> cs;
                for (std::size_t i = 0; i < counts.size(); ++i) cs.push_back(counts.get(i).str());
                j["counts"] = cs;
                j["peak_slots"] = meter.peak_slots;
                j["evaluations"] = meter.evaluations;
                j["wall_time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
                if (as_json) {
                    cli_detail::print_json(j, out);
                } else {
                    out << "min_dominating_set_size " << counts.first_nonzero(r) << "\ncounts";
                    for (auto& c : cs) out << " " << c;
                    out << "\nwall_time_ms " << j["wall_time_ms"].get<double>() << "\n";
                }
            } else {
                auto witness = extract_witness(prep.nt, g);
                auto t1 = std::chrono::steady_clock::now();
                bool verified = is_dominating_set(g, witness);
                if (!verified) throw std::logic_error("internal: witness failed verification");
                std::vector<int> ext;
                for (int v : witness) ext.push_back(v + 1);
                std::sort(ext.begin(), ext.end());
                j["size"] = ext.size();
                j["witness"] = ext;
                j["verified"] = verified;
                j["wall_time_ms"] = std::chrono::duration<double, std::milli>(t1 - t0).count();
                if (as_json) {
                    cli_detail::print_json(j, out);
                } else {
                    out << "size " << ext.size() << "\nwitness";
                    for (int v : ext) out << " " << v;
                    out << "\nverified " << (verified ? "true" : "false") << "\n";
                    out << "wall_time_ms " << j["wall_time_ms"].get<double>() << "\n";
                }
            }
            return 0;
        }
        if (*c_decompose) {
            auto gr = cli_detail::load_graph(graph_path, format);
            for (auto& w : gr.warnings) err << "warning: " << w << "\n";
            auto td = decompose_heuristic(gr.graph, cli_detail::strategy_of(strategy));
            emit_td(td, gr.graph.n, out);
            return 0;
        }
        if (*c_normalize) {
            auto prep = cli_detail::prepare(graph_path, format, td_path, strategy, err);
            emit_nice_debug(prep.nt, out);
            return 0;
        }
        if (*c_validate) {
            auto gr = cli_detail::load_graph(graph_path, format);
            std::istringstream in(cli_detail::slurp(td_path));
            auto tdres = parse_td(in);
            TdReport rep = validate_td(gr.graph, tdres.td);
            if (as_json) {
                OrderedJson j;
                j["command"] = "validate";
                j["graph"] = graph_path;
                j["td"] = td_path;
                j["valid"] = rep.ok();
                j["width"] = tdres.td.bags.empty() ? -1 : width(tdres.td);
                j["violations"] = rep.violations;
                cli_detail::print_json(j, out);
            } else {
                out << (rep.ok() ? "valid" : "invalid") << "\n";
                for (auto& v : rep.violations) out << v << "\n";
            }
            return rep.ok() ? 0 : 1;
        }
        if (*c_oracle) {
            auto gr = cli_detail::load_graph(graph_path, format);
            auto counts = brute_force_counts(gr.graph);
            ExactRing r;
            if (as_json) {
                OrderedJson j;
                j["command"] = "oracle";
                j["graph"] = graph_path;
                j["n"] = gr.graph.n;
                j["m"] = gr.graph.m();
                j["min_dominating_set_size"] = counts.first_nonzero(r);
                std::vector<std::string> cs;
                for (std::size_t i = 0; i < counts.size(); ++i) cs.push_back(counts.get(i).str());
                j["counts"] = cs;
                cli_detail::print_json(j, out);
            } else {
                out << "min_dominating_set_size " << counts.first_nonzero(r) << "\ncounts";
                for (std::size_t i = 0; i < counts.size(); ++i) out << " " << counts.get(i).str();
                out << "\n";
            }
            return 0;
        }
        if (*c_bench) {
            std::stringstream ms(modes_csv);
            bcfg.modes.clear();
            std::string tok;
            while (std::getline(ms, tok, ',')) bcfg.modes.push_back(tok);
            bcfg.modular = (ring == "modular");
            bcfg.ring_seed = seed;
            return run_bench(bcfg, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace zetadom
