#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "zetadom/tree_decomposition.hpp"

namespace zetadom {

enum class NiceKind { Leaf, IntroduceVertex, Forget, Join, AuxiliaryLeaf };

inline const char* kind_name(NiceKind k) {
    switch (k) {
        case NiceKind::Leaf: return "Leaf";
        case NiceKind::IntroduceVertex: return "IntroduceVertex";
        case NiceKind::Forget: return "Forget";
        case NiceKind::Join: return "Join";
        case NiceKind::AuxiliaryLeaf: return "AuxiliaryLeaf";
    }
    return "?";
}

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    std::vector<int> bag;          // sorted
    int child0 = -1, child1 = -1;  // -1 when absent
    int vertex = -1;               // IntroduceVertex / Forget
    std::pair<int, int> edge{-1, -1};  // AuxiliaryLeaf, u < v
};

// Rooted, typed decomposition with empty root and leaf bags. Every graph edge
// is introduced by exactly one auxiliary leaf joined into the tree, so the
// partial graphs tau_x carry only the edges introduced below x.
struct NiceTree {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width = -1;            // max bag size - 1
    int depth = 0;             // nodes on the longest root-to-leaf path
    int branching_depth = 0;   // max forget nodes on any root-to-leaf path

    const NiceNode& at(int id) const { return nodes[id]; }
    std::size_t node_count() const { return nodes.size(); }
};

namespace detail {

struct NiceBuilder {
    const Graph& g;
    NiceTree nt;

    explicit NiceBuilder(const Graph& graph) : g(graph) {}

    int push(NiceNode node) {
        nt.nodes.push_back(std::move(node));
        return static_cast<int>(nt.nodes.size()) - 1;
    }

    int leaf() { return push({NiceKind::Leaf, {}, -1, -1, -1, {-1, -1}}); }

    int intro(std::vector<int> bag, int child, int v) {
        return push({NiceKind::IntroduceVertex, std::move(bag), child, -1, v, {-1, -1}});
    }
    int forget(std::vector<int> bag, int child, int v) {
        return push({NiceKind::Forget, std::move(bag), child, -1, v, {-1, -1}});
    }
    int join(std::vector<int> bag, int c0, int c1) {
        return push({NiceKind::Join, std::move(bag), c0, c1, -1, {-1, -1}});
    }
    int aux(std::vector<int> bag, std::pair<int, int> e) {
        return push({NiceKind::AuxiliaryLeaf, std::move(bag), -1, -1, -1, e});
    }

    // Joins in an auxiliary leaf for every pending edge whose endpoints are
    // all in 'cur'; when 'introduced' >= 0, only edges touching that vertex
    // fire (the edge is attached immediately above its second endpoint).
    int flush(int node, const std::vector<int>& cur, std::vector<std::pair<int, int>>& pend,
              int introduced) {
        std::vector<std::pair<int, int>> rest;
        for (auto e : pend) {
            bool both = std::binary_search(cur.begin(), cur.end(), e.first) &&
                        std::binary_search(cur.begin(), cur.end(), e.second);
            bool fires = both && (introduced < 0 || e.first == introduced || e.second == introduced);
            if (fires) {
                int a = aux(cur, e);
                node = join(cur, node, a);
            } else {
                rest.push_back(e);
            }
        }
        pend = std::move(rest);
        return node;
    }

    // Transforms the chain below (at bag 'from') into bag 'to': forgets first,
    // then introduces in ascending id order, attaching pending edges as soon
    // as both endpoints are present.
    int chain(const std::vector<int>& from, const std::vector<int>& to, int node,
              std::vector<std::pair<int, int>> pend) {
        std::vector<int> cur = from;
        node = flush(node, cur, pend, -1);
        std::vector<int> out;
        std::set_difference(from.begin(), from.end(), to.begin(), to.end(),
                            std::back_inserter(out));
        for (int v : out) {
            cur.erase(std::find(cur.begin(), cur.end(), v));
            node = forget(cur, node, v);
        }
        std::vector<int> in;
        std::set_difference(to.begin(), to.end(), from.begin(), from.end(),
                            std::back_inserter(in));
        for (int v : in) {
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            node = intro(cur, node, v);
            node = flush(node, cur, pend, v);
        }
        if (!pend.empty())
            throw std::logic_error("make_nice: edge could not be attached on its chain");
        return node;
    }
};

} // namespace detail

// Converts a valid tree decomposition into the modified nice form. Edge {u,v}
// is assigned to the deepest decomposition node containing both endpoints
// (ties to the lowest node id) and attached as an auxiliary-leaf join at the
// lowest point of that node's chain where both endpoints are in the bag.
// Deterministic; no rebalancing is performed.
inline NiceTree make_nice(const TreeDecomposition& td, const Graph& g) {
    {
        TdReport rep = validate_td(g, td);
        if (!rep.ok())
            throw std::invalid_argument("make_nice: invalid tree decomposition: " +
                                        rep.violations.front());
    }
    detail::NiceBuilder b(g);
    const int B = static_cast<int>(td.bags.size());
    if (B == 0 || g.n == 0) {
        // empty graph: a single leaf both root and leaf
        b.nt.root = b.leaf();
    } else {
        std::vector<std::vector<int>> nadj(B);
        for (auto [x, y] : td.tree_edges) {
            nadj[x].push_back(y);
            nadj[y].push_back(x);
        }
        for (auto& a : nadj) std::sort(a.begin(), a.end());

        const int root_td = 0;
        std::vector<int> depth(B, -1), order;
        std::vector<std::vector<int>> childmap(B);
        {
            std::vector<int> stack{root_td};
            depth[root_td] = 0;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                order.push_back(x);
                for (int y : nadj[x])
                    if (depth[y] < 0) {
                        depth[y] = depth[x] + 1;
                        childmap[x].push_back(y);
                        stack.push_back(y);
                    }
            }
        }

        std::vector<std::vector<std::pair<int, int>>> edges_at(B);
        for (auto [u, v] : g.edges) {
            int best = -1;
            for (int i = 0; i < B; ++i) {
                if (!std::binary_search(td.bags[i].begin(), td.bags[i].end(), u)) continue;
                if (!std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) continue;
                if (best < 0 || depth[i] > depth[best] || (depth[i] == depth[best] && i < best))
                    best = i;
            }
            edges_at[best].push_back({u, v});
        }
        for (auto& es : edges_at) std::sort(es.begin(), es.end());

        // children before parents: reverse DFS discovery order
        std::vector<int> result(B, -1);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            int x = *it;
            if (childmap[x].empty()) {
                int node = b.leaf();
                result[x] = b.chain({}, td.bags[x], node, edges_at[x]);
            } else {
                int acc = -1;
                for (std::size_t i = 0; i < childmap[x].size(); ++i) {
                    int y = childmap[x][i];
                    auto ev = (i == 0) ? edges_at[x] : std::vector<std::pair<int, int>>{};
                    int sub = b.chain(td.bags[y], td.bags[x], result[y], std::move(ev));
                    acc = (i == 0) ? sub : b.join(td.bags[x], acc, sub);
                }
                result[x] = acc;
            }
        }
        b.nt.root = b.chain(td.bags[root_td], {}, result[root_td], {});
    }

    NiceTree& nt = b.nt;
    nt.width = -1;
    for (const auto& nd : nt.nodes)
        nt.width = std::max(nt.width, static_cast<int>(nd.bag.size()) - 1);
    // depth figures, leaves up
    std::vector<int> dep(nt.nodes.size(), 1), bdep(nt.nodes.size(), 0);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {  // children have lower ids
        const auto& nd = nt.nodes[i];
        int d = 0, bd = 0;
        for (int c : {nd.child0, nd.child1})
            if (c >= 0) {
                d = std::max(d, dep[c]);
                bd = std::max(bd, bdep[c]);
            }
        dep[i] = d + 1;
        bdep[i] = bd + (nd.kind == NiceKind::Forget ? 1 : 0);
    }
    nt.depth = dep[nt.root];
    nt.branching_depth = bdep[nt.root];
    return nt;
}

struct NiceReport {
    bool ok = false;
    int width = -1;
    int depth = 0;
    int branching_depth = 0;
    std::size_t node_count = 0;
    std::vector<std::string> violations;
};

// Structural validation of every typed-node invariant plus global properties:
// tree shape, empty root/leaf bags, each graph edge introduced exactly once,
// and connectivity of each vertex's bag occurrences.
inline NiceReport validate_nice(const NiceTree& nt, const Graph& g) {
    NiceReport rep;
    rep.node_count = nt.node_count();
    auto bad = [&](std::string s) { rep.violations.push_back(std::move(s)); };

    if (nt.root < 0 || nt.root >= static_cast<int>(nt.nodes.size())) {
        bad("missing root");
        return rep;
    }
    std::vector<int> refs(nt.nodes.size(), 0);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        const auto& nd = nt.nodes[i];
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end()) ||
            std::adjacent_find(nd.bag.begin(), nd.bag.end()) != nd.bag.end())
            bad("node " + std::to_string(i) + ": bag not sorted/unique");
        for (int v : nd.bag)
            if (v < 0 || v >= g.n) bad("node " + std::to_string(i) + ": bag vertex out of range");
        for (int c : {nd.child0, nd.child1})
            if (c >= 0) {
                if (c >= static_cast<int>(nt.nodes.size()))
                    bad("node " + std::to_string(i) + ": child id out of range");
                else
                    refs[c]++;
            }
    }
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        int expect = (static_cast<int>(i) == nt.root) ? 0 : 1;
        if (refs[i] != expect)
            bad("node " + std::to_string(i) + ": referenced " + std::to_string(refs[i]) +
                " times (tree shape violated)");
    }
    if (!rep.violations.empty()) return rep;

    if (!nt.nodes[nt.root].bag.empty()) bad("nonempty root bag");

    std::map<std::pair<int, int>, int> edge_seen;
    int max_bag = 0;
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        const auto& nd = nt.nodes[i];
        max_bag = std::max(max_bag, static_cast<int>(nd.bag.size()));
        auto child_bag = [&](int c) -> const std::vector<int>& { return nt.nodes[c].bag; };
        switch (nd.kind) {
            case NiceKind::Leaf:
                if (!nd.bag.empty()) bad("node " + std::to_string(i) + ": leaf with nonempty bag");
                if (nd.child0 >= 0 || nd.child1 >= 0)
                    bad("node " + std::to_string(i) + ": leaf with children");
                break;
            case NiceKind::IntroduceVertex: {
                if (nd.child0 < 0 || nd.child1 >= 0) {
                    bad("node " + std::to_string(i) + ": introduce needs exactly one child");
                    break;
                }
                std::vector<int> expect = child_bag(nd.child0);
                if (std::binary_search(expect.begin(), expect.end(), nd.vertex))
                    bad("node " + std::to_string(i) + ": introduced vertex already in child bag");
                expect.insert(std::upper_bound(expect.begin(), expect.end(), nd.vertex), nd.vertex);
                if (expect != nd.bag)
                    bad("node " + std::to_string(i) + ": bag != child bag + introduced vertex");
                break;
            }
            case NiceKind::Forget: {
                if (nd.child0 < 0 || nd.child1 >= 0) {
                    bad("node " + std::to_string(i) + ": forget needs exactly one child");
                    break;
                }
                std::vector<int> expect = child_bag(nd.child0);
                auto it = std::find(expect.begin(), expect.end(), nd.vertex);
                if (it == expect.end())
                    bad("node " + std::to_string(i) + ": forgotten vertex not in child bag");
                else
                    expect.erase(it);
                if (expect != nd.bag)
                    bad("node " + std::to_string(i) + ": bag != child bag - forgotten vertex");
                break;
            }
            case NiceKind::Join:
                if (nd.child0 < 0 || nd.child1 < 0) {
                    bad("node " + std::to_string(i) + ": join needs two children");
                    break;
                }
                if (child_bag(nd.child0) != nd.bag || child_bag(nd.child1) != nd.bag)
                    bad("node " + std::to_string(i) + ": join children bags differ from own bag");
                break;
            case NiceKind::AuxiliaryLeaf: {
                if (nd.child0 >= 0 || nd.child1 >= 0)
                    bad("node " + std::to_string(i) + ": auxiliary leaf with children");
                auto [u, v] = nd.edge;
                if (!std::binary_search(nd.bag.begin(), nd.bag.end(), u) ||
                    !std::binary_search(nd.bag.begin(), nd.bag.end(), v))
                    bad("node " + std::to_string(i) + ": carried edge endpoints not in bag");
                if (!g.has_edge(u, v))
                    bad("node " + std::to_string(i) + ": carried edge not in graph");
                edge_seen[{std::min(u, v), std::max(u, v)}]++;
                break;
            }
        }
    }
    for (auto [u, v] : g.edges) {
        int c = edge_seen.count({u, v}) ? edge_seen[{u, v}] : 0;
        if (c == 0)
            bad("edge {" + std::to_string(u) + "," + std::to_string(v) + "} never introduced");
        else if (c > 1)
            bad("edge {" + std::to_string(u) + "," + std::to_string(v) + "} introduced twice");
    }
    for (auto& [e, c] : edge_seen)
        if (!g.has_edge(e.first, e.second))
            bad("auxiliary edge {" + std::to_string(e.first) + "," + std::to_string(e.second) +
                "} not a graph edge");

    // each vertex's occurrences form one connected block: exactly one topmost
    std::vector<int> parent(nt.nodes.size(), -1);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i)
        for (int c : {nt.nodes[i].child0, nt.nodes[i].child1})
            if (c >= 0) parent[c] = static_cast<int>(i);
    std::vector<int> topmost(g.n, 0);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i)
        for (int v : nt.nodes[i].bag) {
            int p = parent[i];
            bool in_parent = p >= 0 && std::binary_search(nt.nodes[p].bag.begin(),
                                                          nt.nodes[p].bag.end(), v);
            if (!in_parent) topmost[v]++;
        }
    for (int v = 0; v < g.n; ++v)
        if (topmost[v] > 1)
            bad("vertex " + std::to_string(v) + " occurs in " + std::to_string(topmost[v]) +
                " disconnected blocks");

    // depth figures
    std::vector<int> dep(nt.nodes.size(), 0), bdep(nt.nodes.size(), 0);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        const auto& nd = nt.nodes[i];
        int d = 0, bd = 0;
        for (int c : {nd.child0, nd.child1})
            if (c >= 0 && c < static_cast<int>(i)) {
                d = std::max(d, dep[c]);
                bd = std::max(bd, bdep[c]);
            }
        dep[i] = d + 1;
        bdep[i] = bd + (nd.kind == NiceKind::Forget ? 1 : 0);
    }
    rep.width = max_bag - 1;
    rep.depth = dep[nt.root];
    rep.branching_depth = bdep[nt.root];
    rep.ok = rep.violations.empty();
    return rep;
}

// One node per line: "id kind bag children". Debug/golden-test format, not a
// standardized exchange format. Ids and vertices are 0-based.
inline void emit_nice_debug(const NiceTree& nt, std::ostream& out) {
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        const auto& nd = nt.nodes[i];
        out << i << " " << kind_name(nd.kind);
        if (nd.kind == NiceKind::IntroduceVertex || nd.kind == NiceKind::Forget)
            out << "(" << nd.vertex << ")";
        if (nd.kind == NiceKind::AuxiliaryLeaf)
            out << "(" << nd.edge.first << "," << nd.edge.second << ")";
        out << " {";
        for (std::size_t j = 0; j < nd.bag.size(); ++j) out << (j ? "," : "") << nd.bag[j];
        out << "}";
        if (nd.child0 >= 0) out << " " << nd.child0;
        if (nd.child1 >= 0) out << " " << nd.child1;
        if (static_cast<int>(i) == nt.root) out << " root";
        out << "\n";
    }
}

} // namespace zetadom
