#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetadom/coeff.hpp"
#include "zetadom/ring.hpp"

namespace zetadom {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph with contiguous 0-based vertex ids. Immutable after
// construction; external 1-based formats are mapped on parse/emit.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, sorted, unique
    std::vector<std::vector<int>> adj;       // sorted neighbor lists

    bool has_edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
    }
    int m() const { return static_cast<int>(edges.size()); }
};

// Builds a Graph from an edge list, deduplicating (warnings go to *warnings
// when given) and rejecting self-loops and out-of-range endpoints.
inline Graph make_graph(int n, std::vector<std::pair<int, int>> edge_list,
                        std::vector<std::string>* warnings = nullptr) {
    if (n < 0) throw ParseError("negative vertex count");
    Graph g;
    g.n = n;
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edge_list) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw ParseError("edge endpoint out of range: {" + std::to_string(u) + "," +
                             std::to_string(v) + "} with n=" + std::to_string(n));
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) {
            if (warnings)
                warnings->push_back("duplicate edge {" + std::to_string(u) + "," +
                                    std::to_string(v) + "} merged");
            continue;
        }
    }
    g.edges.assign(seen.begin(), seen.end());
    g.adj.assign(n, {});
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

enum class GraphFormat { PaceGr, DimacsEdge };

struct GraphParseResult {
    Graph graph;
    std::vector<std::string> warnings;
};

namespace detail {
inline bool next_data_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        std::size_t i = line.find_first_not_of(" \t\r");
        if (i == std::string::npos) continue;
        if (line[i] == 'c') continue;
        return true;
    }
    return false;
}
} // namespace detail

// Parses PACE 2016 .gr ("p tw n m", edge lines "u v") or DIMACS edge format
// ("p edge n m", edge lines "e u v"). External ids are 1-based.
inline GraphParseResult parse_graph(std::istream& in, GraphFormat format) {
    std::string line;
    if (!detail::next_data_line(in, line)) throw ParseError("empty graph input");
    std::istringstream hdr(line);
    std::string p, kind;
    long long n = -1, m = -1;
    hdr >> p >> kind >> n >> m;
    if (p != "p" || hdr.fail()) throw ParseError("malformed header: " + line);
    const char* want = format == GraphFormat::PaceGr ? "tw" : "edge";
    if (kind != want)
        throw ParseError("header problem type '" + kind + "' does not match requested format");
    if (n < 0 || m < 0) throw ParseError("malformed header counts: " + line);

    GraphParseResult res;
    std::vector<std::pair<int, int>> edge_list;
    long long edges_read = 0;
    while (detail::next_data_line(in, line)) {
        std::istringstream ls(line);
        long long u, v;
        if (format == GraphFormat::DimacsEdge) {
            std::string e;
            ls >> e >> u >> v;
            if (e != "e" || ls.fail()) throw ParseError("malformed edge line: " + line);
        } else {
            ls >> u >> v;
            if (ls.fail()) throw ParseError("malformed edge line: " + line);
        }
        if (u < 1 || v < 1 || u > n || v > n)
            throw ParseError("edge references out-of-range vertex: " + line);
        edge_list.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1)});
        ++edges_read;
    }
    if (edges_read != m)
        res.warnings.push_back("header declares " + std::to_string(m) + " edges, found " +
                               std::to_string(edges_read));
    res.graph = make_graph(static_cast<int>(n), std::move(edge_list), &res.warnings);
    return res;
}

// Peeks at the header to pick the format, then parses.
inline GraphParseResult parse_graph_auto(std::istream& in) {
    std::string all(std::istreambuf_iterator<char>(in), {});
    std::istringstream probe(all);
    std::string line;
    if (!detail::next_data_line(probe, line)) throw ParseError("empty graph input");
    std::istringstream hdr(line);
    std::string p, kind;
    hdr >> p >> kind;
    GraphFormat f;
    if (kind == "tw") f = GraphFormat::PaceGr;
    else if (kind == "edge") f = GraphFormat::DimacsEdge;
    else throw ParseError("unrecognized graph header: " + line);
    std::istringstream body(all);
    return parse_graph(body, f);
}

inline void emit_graph(const Graph& g, std::ostream& out) {
    out << "p tw " << g.n << " " << g.edges.size() << "\n";
    for (auto [u, v] : g.edges) out << (u + 1) << " " << (v + 1) << "\n";
}

// N[X] = X together with every neighbor of a member of X.
inline std::vector<int> closed_neighborhood(const Graph& g, std::span<const int> x) {
    std::vector<char> in(g.n, 0);
    for (int v : x) {
        if (v < 0 || v >= g.n) throw std::out_of_range("vertex out of range");
        in[v] = 1;
        for (int u : g.adj[v]) in[u] = 1;
    }
    std::vector<int> out;
    for (int v = 0; v < g.n; ++v)
        if (in[v]) out.push_back(v);
    return out;
}

inline bool is_dominating_set(const Graph& g, std::span<const int> d) {
    return static_cast<int>(closed_neighborhood(g, d).size()) == g.n;
}

inline constexpr int kBruteForceCap = 25;

// Counts dominating sets of every size by enumerating all 2^n subsets.
// Entry j = number of dominating sets of size exactly j.
inline CoeffVector<BigInt> brute_force_counts(const Graph& g) {
    if (g.n > kBruteForceCap)
        throw std::invalid_argument("brute_force_counts: instance too large (n > 25)");
    std::vector<std::uint32_t> nmask(g.n);
    for (int v = 0; v < g.n; ++v) {
        std::uint32_t m = 1u << v;
        for (int u : g.adj[v]) m |= 1u << u;
        nmask[v] = m;
    }
    const std::uint32_t full = g.n == 32 ? ~0u : (1u << g.n) - 1;
    std::vector<std::uint64_t> counts(g.n + 1, 0);
    for (std::uint64_t s = 0; s < (1ull << g.n); ++s) {
        std::uint32_t dom = 0;
        auto rest = static_cast<std::uint32_t>(s);
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            dom |= nmask[v];
        }
        if (dom == full) counts[std::popcount(static_cast<std::uint32_t>(s))]++;
    }
    CoeffVector<BigInt> out(g.n + 1);
    for (int j = 0; j <= g.n; ++j) out.set(j, BigInt(counts[j]));
    return out;
}

} // namespace zetadom
