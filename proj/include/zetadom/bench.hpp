#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zetadom/generators.hpp"
#include "zetadom/nice_tree.hpp"
#include "zetadom/solver.hpp"
#include "zetadom/table_dp.hpp"

namespace zetadom {

struct BenchConfig {
    std::string family = "path";            // path | cycle | grid | ktree
    int n_from = 10, n_to = 50, n_step = 10;
    int k = 3;                              // ktree clique size
    int depth_cap = 4;                      // ktree construction depth cap
    int drop_permille = 300;                // ktree edge drop rate
    int rows = 2;                           // grid rows; n sweeps columns
    std::uint64_t seed_from = 1, seed_to = 1;
    std::vector<std::string> modes{"zeta", "table"};
    bool modular = false;
    std::uint64_t ring_seed = 1;
};

struct BenchRow {
    std::string family;
    int n = 0, m = 0, k = 0, d = 0;
    std::string mode;
    long long answer = -1;
    long long peak_slots = 0;
    double wall_time_ms = 0.0;
};

inline void write_bench_header(std::ostream& out) {
    out << "family,n,m,k,d,mode,answer,peak_slots,wall_time_ms\n";
}

inline void write_bench_row(std::ostream& out, const BenchRow& r) {
    out << r.family << "," << r.n << "," << r.m << "," << r.k << "," << r.d << "," << r.mode
        << "," << r.answer << "," << r.peak_slots << "," << r.wall_time_ms << "\n";
}

// Runs one instance in one mode. d and k columns describe the nice tree the
// instance shipped with (brute ignores it).
inline BenchRow bench_one(const Instance& inst, const NiceTree& nt, const std::string& mode,
                          bool modular, std::uint64_t ring_seed) {
    BenchRow row;
    row.family = inst.family;
    row.n = inst.graph.n;
    row.m = inst.graph.m();
    row.k = nt.width;
    row.d = nt.depth;
    row.mode = mode;
    auto t0 = std::chrono::steady_clock::now();
    MeterReport meter{};
    if (mode == "zeta") {
        if (modular) {
            row.answer = solve_min_modular(nt, inst.graph, ring_seed, &meter);
        } else {
            row.answer = solve_min_exact(nt, inst.graph, &meter);
        }
        row.peak_slots = meter.peak_slots;
    } else if (mode == "table") {
        row.answer = table_dp_min(nt, inst.graph, &meter);
        row.peak_slots = meter.peak_slots;
    } else if (mode == "brute") {
        auto v = brute_force_counts(inst.graph);
        ExactRing ring;
        row.answer = v.first_nonzero(ring);
        row.peak_slots = static_cast<long long>(v.size());
    } else {
        throw std::invalid_argument("bench: unknown mode '" + mode + "'");
    }
    auto t1 = std::chrono::steady_clock::now();
    row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return row;
}

inline std::vector<Instance> bench_instances(const BenchConfig& cfg) {
    std::vector<Instance> out;
    for (int n = cfg.n_from; n <= cfg.n_to; n += std::max(1, cfg.n_step)) {
        if (cfg.family == "path") {
            out.push_back(gen_path(n));
        } else if (cfg.family == "cycle") {
            out.push_back(gen_cycle(n));
        } else if (cfg.family == "grid") {
            out.push_back(gen_grid(cfg.rows, n));
        } else if (cfg.family == "ktree") {
            for (std::uint64_t s = cfg.seed_from; s <= cfg.seed_to; ++s)
                out.push_back(gen_partial_ktree(n, cfg.k, s, cfg.drop_permille, cfg.depth_cap));
        } else {
            throw std::invalid_argument("bench: unknown family '" + cfg.family + "'");
        }
    }
    return out;
}

// CSV rows, one per (instance, mode). Any cross-mode answer disagreement
// aborts with a mismatch report: the harness is itself a test.
inline int run_bench(const BenchConfig& cfg, std::ostream& csv, std::ostream& err) {
    write_bench_header(csv);
    for (const Instance& inst : bench_instances(cfg)) {
        NiceTree nt = make_nice(inst.td, inst.graph);
        std::optional<long long> expect;
        for (const auto& mode : cfg.modes) {
            BenchRow row = bench_one(inst, nt, mode, cfg.modular, cfg.ring_seed);
            write_bench_row(csv, row);
            if (expect && *expect != row.answer) {
                err << "bench: answer mismatch on " << inst.family << " n=" << inst.graph.n
                    << " seed=" << inst.seed << ": " << *expect << " vs " << row.answer << " ("
                    << mode << ")\n";
                return 1;
            }
            expect = row.answer;
        }
    }
    return 0;
}

} // namespace zetadom
