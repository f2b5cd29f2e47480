#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "zetadom/tree_decomposition.hpp"

namespace zetadom {

enum class ElimStrategy { MinFill, MinDegree };

namespace detail {

// Standard elimination-ordering construction: bag(v) = {v} u N(v) at
// elimination time, neighborhood turned into a clique, each bag connected to
// the bag of the earliest later-eliminated neighbor. Isolated-at-elimination
// vertices start new components; component trees are linked afterwards.
inline TreeDecomposition td_from_order(const Graph& g, const std::vector<int>& order) {
    const int n = g.n;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    TreeDecomposition td;
    std::vector<char> alive(n, 1);
    for (int step = 0; step < n; ++step) {
        int v = order[step];
        std::vector<int> nb;
        for (int u = 0; u < n; ++u)
            if (alive[u] && u != v && adj[v][u]) nb.push_back(u);
        std::vector<int> bag = nb;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
        alive[v] = 0;
        if (!nb.empty()) {
            int first = *std::min_element(nb.begin(), nb.end(),
                                          [&](int a, int b) { return pos[a] < pos[b]; });
            td.tree_edges.push_back({step, pos[first]});
        }
    }
    if (n == 0) td.bags.push_back({});  // one empty bag; width -1

    // stitch components: every bag without a parent link except the first root
    std::vector<int> parent(td.bags.size(), -1);
    std::vector<std::vector<int>> nadj(td.bags.size());
    for (auto [a, b] : td.tree_edges) {
        nadj[a].push_back(b);
        nadj[b].push_back(a);
    }
    std::vector<char> seen(td.bags.size(), 0);
    std::vector<int> roots;
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        if (seen[i]) continue;
        roots.push_back(static_cast<int>(i));
        std::vector<int> stack{static_cast<int>(i)};
        seen[i] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : nadj[x])
                if (!seen[y]) { seen[y] = 1; stack.push_back(y); }
        }
    }
    for (std::size_t i = 1; i < roots.size(); ++i)
        td.tree_edges.push_back({roots[0], roots[i]});
    return td;
}

} // namespace detail

// Heuristic tree decomposition from a greedy elimination ordering.
// Deterministic: ties broken by lowest vertex id.
inline TreeDecomposition decompose_heuristic(const Graph& g, ElimStrategy strategy) {
    const int n = g.n;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
    std::vector<char> alive(n, 1);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long long best_score = std::numeric_limits<long long>::max();
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (alive[u] && u != v && adj[v][u]) nb.push_back(u);
            long long score;
            if (strategy == ElimStrategy::MinDegree) {
                score = static_cast<long long>(nb.size());
            } else {
                long long fill = 0;
                for (std::size_t i = 0; i < nb.size(); ++i)
                    for (std::size_t j = i + 1; j < nb.size(); ++j)
                        if (!adj[nb[i]][nb[j]]) ++fill;
                score = fill;
            }
            if (score < best_score) {
                best_score = score;
                best = v;
            }
        }
        order.push_back(best);
        std::vector<int> nb;
        for (int u = 0; u < n; ++u)
            if (alive[u] && u != best && adj[best][u]) nb.push_back(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
        alive[best] = 0;
    }
    return detail::td_from_order(g, order);
}

inline constexpr int kExactTwCap = 16;

// Exact treewidth by dynamic programming over all elimination orderings
// (subsets of still-present vertices). Test-scale only.
inline int exact_treewidth(const Graph& g) {
    const int n = g.n;
    if (n == 0) return -1;
    if (n > kExactTwCap) throw std::invalid_argument("exact_treewidth: n too large");
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    // degree of v in the elimination graph where 'present' is the remaining set:
    // neighbors in 'present' reachable from v through eliminated vertices.
    auto elim_deg = [&](int v, std::uint32_t present) {
        std::uint32_t seen = 1u << v, nb = 0;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            std::uint32_t cand = adj[x] & ~seen;
            seen |= cand;
            std::uint32_t through = cand & ~present;
            nb |= cand & present;
            while (through) {
                int u = std::countr_zero(through);
                through &= through - 1;
                stack.push_back(u);
            }
        }
        return std::popcount(nb);
    };
    const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1;
    std::vector<int> best(std::size_t{1} << n, -2);
    best[0] = -1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        int r = std::numeric_limits<int>::max();
        std::uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            int d = elim_deg(v, mask & ~(1u << v));
            int sub = best[mask & ~(1u << v)];
            r = std::min(r, std::max(d, sub));
        }
        best[mask] = r;
    }
    return best[full];
}

// Exact-width decomposition for tiny graphs: recovers an optimal elimination
// order from the subset DP, then builds the usual decomposition from it.
inline TreeDecomposition exact_decomposition(const Graph& g) {
    const int n = g.n;
    if (n == 0) return detail::td_from_order(g, {});
    if (n > kExactTwCap) throw std::invalid_argument("exact_decomposition: n too large");
    int target = exact_treewidth(g);
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [u, v] : g.edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    auto elim_nb = [&](int v, std::uint32_t present) {
        std::uint32_t seen = 1u << v, nb = 0;
        std::vector<int> stack{v};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            std::uint32_t cand = adj[x] & ~seen;
            seen |= cand;
            std::uint32_t through = cand & ~present;
            nb |= cand & present;
            while (through) {
                int u = std::countr_zero(through);
                through &= through - 1;
                stack.push_back(u);
            }
        }
        return nb;
    };
    // greedy reconstruction: at each step pick the lowest vertex whose
    // elimination keeps the remainder solvable within 'target'
    std::unordered_map<std::uint32_t, int> memo;
    std::function<int(std::uint32_t)> width_of = [&](std::uint32_t mask) -> int {
        if (mask == 0) return -1;
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        int r = std::numeric_limits<int>::max();
        std::uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            int d = std::popcount(elim_nb(v, mask & ~(1u << v)));
            r = std::min(r, std::max(d, width_of(mask & ~(1u << v))));
        }
        memo[mask] = r;
        return r;
    };
    std::uint32_t mask = (n == 32) ? ~0u : (1u << n) - 1;
    std::vector<int> order;
    while (mask) {
        std::uint32_t rest = mask;
        while (rest) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            std::uint32_t rem = mask & ~(1u << v);
            int d = std::popcount(elim_nb(v, rem));
            if (std::max(d, width_of(rem)) <= target) {
                order.push_back(v);
                mask = rem;
                break;
            }
        }
    }
    return detail::td_from_order(g, order);
}

} // namespace zetadom
