#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetadom/tree_decomposition.hpp"

namespace zetadom {

// Deterministic bounded draw (plain modulo; the tiny bias is irrelevant for
// instance generation and keeps results identical across standard libraries).
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t m) {
    return m ? rng() % m : 0;
}

struct Instance {
    std::string family;
    Graph graph;
    TreeDecomposition td;
    int k_param = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// Balanced interval decomposition: bag = {midpoint} u boundary, recursing on
// halves.  Width <= 2 and depth O(log n), which is what makes the strand
// recursion polynomial on long paths/cycles.
struct IntervalTdBuilder {
    TreeDecomposition td;

    int rec(const std::vector<int>& verts, std::vector<int> boundary) {
        int idx = static_cast<int>(td.bags.size());
        if (verts.size() <= 3) {
            std::vector<int> bag = verts;
            for (int b : boundary) bag.push_back(b);
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            td.bags.push_back(bag);
            return idx;
        }
        std::size_t mi = verts.size() / 2;
        int m = verts[mi];
        std::vector<int> bag = boundary;
        bag.push_back(m);
        std::sort(bag.begin(), bag.end());
        bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        td.bags.push_back(bag);
        std::vector<int> left(verts.begin(), verts.begin() + mi + 1);
        std::vector<int> right(verts.begin() + mi, verts.end());
        int a = rec(left, {left.front(), left.back()});
        td.tree_edges.push_back({idx, a});
        int b = rec(right, {right.front(), right.back()});
        td.tree_edges.push_back({idx, b});
        return idx;
    }
};

} // namespace detail

inline Instance gen_path(int n) {
    if (n < 1) throw std::invalid_argument("gen_path: n >= 1 required");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    Instance inst;
    inst.family = "path";
    inst.graph = make_graph(n, edges);
    std::vector<int> verts(n);
    for (int i = 0; i < n; ++i) verts[i] = i;
    detail::IntervalTdBuilder b;
    if (n <= 3) {
        b.td.bags.push_back(verts);
    } else {
        b.rec(verts, {});
    }
    inst.td = b.td;
    inst.k_param = width(inst.td);
    return inst;
}

inline Instance gen_cycle(int n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: n >= 3 required");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    Instance inst;
    inst.family = "cycle";
    inst.graph = make_graph(n, edges);
    detail::IntervalTdBuilder b;
    int m = n / 2;
    int root = static_cast<int>(b.td.bags.size());
    b.td.bags.push_back({0, m});
    std::vector<int> arc1, arc2;
    for (int i = 0; i <= m; ++i) arc1.push_back(i);
    for (int i = m; i < n; ++i) arc2.push_back(i);
    arc2.push_back(0);
    int a = b.rec(arc1, {0, m});
    b.td.tree_edges.push_back({root, a});
    int c = b.rec(arc2, {m, 0});
    b.td.tree_edges.push_back({root, c});
    inst.td = b.td;
    inst.k_param = width(inst.td);
    return inst;
}

// rows x cols grid in row-major order with the natural sliding-window chain
// decomposition (width = min dimension). Depth is linear; keep these small.
inline Instance gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: dimensions >= 1");
    if (rows > cols) std::swap(rows, cols);  // window over the short side
    const int n = rows * cols;
    auto id = [&](int r, int c) { return c * rows + r; };  // column-major: window = one column + next
    std::vector<std::pair<int, int>> edges;
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) {
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
        }
    Instance inst;
    inst.family = "grid";
    inst.graph = make_graph(n, edges);
    TreeDecomposition td;
    if (n <= rows + 1) {
        std::vector<int> bag(n);
        for (int i = 0; i < n; ++i) bag[i] = i;
        td.bags.push_back(bag);
    } else {
        for (int t = 0; t + rows < n; ++t) {
            std::vector<int> bag;
            for (int i = t; i <= t + rows; ++i) bag.push_back(i);
            td.bags.push_back(bag);
            if (t > 0) td.tree_edges.push_back({t - 1, t});
        }
    }
    inst.td = td;
    inst.k_param = width(td);
    return inst;
}

// Random partial k-tree: grow a k-tree whose construction tree is kept
// shallow (attachment restricted to nodes of depth < depth_cap), then drop
// each edge with probability drop_permille/1000. The construction bags are
// the shipped decomposition; edge removal cannot invalidate it.
inline Instance gen_partial_ktree(int n, int k, std::uint64_t seed,
                                  int drop_permille = 300, int depth_cap = 4) {
    if (n < 1 || k < 0) throw std::invalid_argument("gen_partial_ktree: bad parameters");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const int base = std::min(k + 1, n);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < base; ++u)
        for (int v = u + 1; v < base; ++v) edges.push_back({u, v});
    TreeDecomposition td;
    std::vector<int> depth;
    {
        std::vector<int> bag(base);
        for (int i = 0; i < base; ++i) bag[i] = i;
        td.bags.push_back(bag);
        depth.push_back(0);
    }
    std::vector<int> shallow{0};
    for (int v = base; v < n; ++v) {
        int parent = shallow[static_cast<std::size_t>(rng_below(rng, shallow.size()))];
        std::vector<int> pool = td.bags[parent];
        std::vector<int> clique;
        for (int i = 0; i < k && !pool.empty(); ++i) {
            std::size_t pick = static_cast<std::size_t>(rng_below(rng, pool.size()));
            clique.push_back(pool[pick]);
            pool.erase(pool.begin() + pick);
        }
        std::sort(clique.begin(), clique.end());
        for (int u : clique) edges.push_back({u, v});
        std::vector<int> bag = clique;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        td.tree_edges.push_back({parent, static_cast<int>(td.bags.size()) - 1});
        depth.push_back(depth[parent] + 1);
        if (depth.back() < depth_cap) shallow.push_back(static_cast<int>(td.bags.size()) - 1);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::pair<int, int>> kept;
    for (auto e : edges)
        if (rng_below(rng, 1000) >= static_cast<std::uint64_t>(drop_permille)) kept.push_back(e);
    Instance inst;
    inst.family = "ktree";
    inst.graph = make_graph(n, kept);
    inst.td = td;
    inst.k_param = k;
    inst.seed = seed;
    return inst;
}

// Erdos-Renyi G(n, p) with p in permille; decomposition left to heuristics.
inline Graph gen_er(int n, int p_permille, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng_below(rng, 1000) < static_cast<std::uint64_t>(p_permille))
                edges.push_back({u, v});
    return make_graph(n, edges);
}

} // namespace zetadom
