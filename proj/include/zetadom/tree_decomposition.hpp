#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "zetadom/graph.hpp"

namespace zetadom {

// Bags attached to an unrooted tree. Node ids are 0-based internally;
// the PACE .td format is 1-based on both bag ids and vertex ids.
struct TreeDecomposition {
    std::vector<std::vector<int>> bags;      // each sorted ascending
    std::vector<std::pair<int, int>> tree_edges;

    std::size_t node_count() const { return bags.size(); }
};

// Max bag size minus one. An empty decomposition has no width.
inline int width(const TreeDecomposition& td) {
    if (td.bags.empty()) throw std::invalid_argument("width: empty decomposition");
    std::size_t mx = 0;
    for (const auto& b : td.bags) mx = std::max(mx, b.size());
    return static_cast<int>(mx) - 1;
}

struct TdReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks the three defining properties plus tree shape; every violation is
// reported with a concrete witness. Violations are data, not errors.
inline TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
    TdReport rep;
    const int B = static_cast<int>(td.bags.size());

    for (auto [a, b] : td.tree_edges)
        if (a < 0 || b < 0 || a >= B || b >= B) {
            rep.violations.push_back("tree edge references unknown node {" + std::to_string(a) +
                                     "," + std::to_string(b) + "}");
            return rep;
        }

    std::vector<std::vector<int>> nadj(B);
    for (auto [a, b] : td.tree_edges) {
        nadj[a].push_back(b);
        nadj[b].push_back(a);
    }
    if (B > 0) {
        std::vector<char> seen(B, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++cnt;
            for (int y : nadj[x])
                if (!seen[y]) { seen[y] = 1; stack.push_back(y); }
        }
        if (cnt != B) rep.violations.push_back("node tree is disconnected");
        if (static_cast<int>(td.tree_edges.size()) != B - 1)
            rep.violations.push_back("node tree has " + std::to_string(td.tree_edges.size()) +
                                     " edges, expected " + std::to_string(B - 1));
    }

    std::vector<char> covered(g.n, 0);
    for (const auto& bag : td.bags)
        for (int v : bag) {
            if (v < 0 || v >= g.n) {
                rep.violations.push_back("bag contains unknown vertex " + std::to_string(v));
                return rep;
            }
            covered[v] = 1;
        }
    for (int v = 0; v < g.n; ++v)
        if (!covered[v]) rep.violations.push_back("vertex " + std::to_string(v) + " is in no bag");

    for (auto [u, v] : g.edges) {
        bool found = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        if (!found)
            rep.violations.push_back("edge {" + std::to_string(u) + "," + std::to_string(v) +
                                     "} is covered by no bag");
    }

    // connectivity: occurrences of each vertex induce one subtree
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> occ;
        for (int i = 0; i < B; ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) occ.push_back(i);
        if (occ.size() <= 1) continue;
        std::vector<char> inocc(B, 0), seen(B, 0);
        for (int i : occ) inocc[i] = 1;
        std::vector<int> stack{occ[0]};
        seen[occ[0]] = 1;
        std::size_t cnt = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++cnt;
            for (int y : nadj[x])
                if (inocc[y] && !seen[y]) { seen[y] = 1; stack.push_back(y); }
        }
        if (cnt != occ.size()) {
            int other = -1;
            for (int i : occ)
                if (!seen[i]) { other = i; break; }
            rep.violations.push_back("vertex " + std::to_string(v) +
                                     " occurrences are disconnected (nodes " +
                                     std::to_string(occ[0]) + " and " + std::to_string(other) +
                                     " lie in different components)");
        }
    }
    return rep;
}

struct TdParseResult {
    TreeDecomposition td;
    int declared_n = 0;
    std::vector<std::string> warnings;
};

// PACE .td: "s td <#bags> <width+1> <n>", bag lines "b <id> v...", then one
// tree edge per line. Comment lines start with 'c'.
inline TdParseResult parse_td(std::istream& in) {
    std::string line;
    if (!detail::next_data_line(in, line)) throw ParseError("empty .td input");
    std::istringstream hdr(line);
    std::string s, tdtok;
    long long nb = -1, w1 = -1, n = -1;
    hdr >> s >> tdtok >> nb >> w1 >> n;
    if (s != "s" || tdtok != "td" || hdr.fail() || nb < 0 || w1 < 0 || n < 0)
        throw ParseError("malformed .td header: " + line);

    TdParseResult res;
    res.declared_n = static_cast<int>(n);
    res.td.bags.assign(nb, {});
    std::vector<char> have(nb, 0);
    while (detail::next_data_line(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "b") {
            long long id;
            ls >> id;
            if (ls.fail() || id < 1 || id > nb) throw ParseError("malformed bag line: " + line);
            if (have[id - 1]) throw ParseError("bag " + std::to_string(id) + " defined twice");
            have[id - 1] = 1;
            std::vector<int> bag;
            long long v;
            while (ls >> v) {
                if (v < 1 || v > n)
                    throw ParseError("bag references unknown vertex " + std::to_string(v));
                bag.push_back(static_cast<int>(v - 1));
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            res.td.bags[id - 1] = std::move(bag);
        } else {
            std::istringstream es(line);
            long long a, b;
            es >> a >> b;
            if (es.fail() || a < 1 || b < 1 || a > nb || b > nb)
                throw ParseError("malformed tree edge line: " + line);
            res.td.tree_edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1)});
        }
    }
    for (int i = 0; i < nb; ++i)
        if (!have[i]) res.warnings.push_back("bag " + std::to_string(i + 1) + " missing, treated as empty");

    // tree shape is a parse-level contract
    if (nb > 0) {
        std::vector<std::vector<int>> nadj(nb);
        for (auto [a, b] : res.td.tree_edges) {
            nadj[a].push_back(b);
            nadj[b].push_back(a);
        }
        std::vector<char> seen(nb, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        long long cnt = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++cnt;
            for (int y : nadj[x])
                if (!seen[y]) { seen[y] = 1; stack.push_back(y); }
        }
        if (cnt != nb || static_cast<long long>(res.td.tree_edges.size()) != nb - 1)
            throw ParseError("decomposition node tree is not a tree (disconnected or cyclic)");
    }

    int declared_w1 = static_cast<int>(w1);
    if (nb > 0 && width(res.td) + 1 != declared_w1)
        res.warnings.push_back("header width " + std::to_string(declared_w1) +
                               " does not match actual " + std::to_string(width(res.td) + 1));
    return res;
}

inline void emit_td(const TreeDecomposition& td, int n, std::ostream& out) {
    int w1 = td.bags.empty() ? 0 : width(td) + 1;
    out << "s td " << td.bags.size() << " " << w1 << " " << n << "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << (i + 1);
        for (int v : td.bags[i]) out << " " << (v + 1);
        out << "\n";
    }
    auto edges = td.tree_edges;
    for (auto& [a, b] : edges)
        if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    for (auto [a, b] : edges) out << (a + 1) << " " << (b + 1) << "\n";
}

} // namespace zetadom
