#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "zetadom/coeff.hpp"
#include "zetadom/graph.hpp"
#include "zetadom/nice_tree.hpp"
#include "zetadom/solver.hpp"

namespace zetadom {

inline constexpr int kTableWidthCap = 15;
inline constexpr int kTableInf = 1 << 29;

namespace detail {

// digit per bag position: 0 = waiting, 1 = in C, 2 = dominated
inline std::size_t pow3(int k) {
    std::size_t r = 1;
    while (k--) r *= 3;
    return r;
}

inline std::vector<int> post_order(const NiceTree& nt) {
    std::vector<int> order;
    std::vector<std::pair<int, int>> stack{{nt.root, 0}};
    while (!stack.empty()) {
        auto& [x, phase] = stack.back();
        const auto& nd = nt.nodes[x];
        int kids[2] = {nd.child0, nd.child1};
        if (phase < 2 && kids[phase] >= 0) {
            int c = kids[phase];
            ++phase;
            stack.push_back({c, 0});
        } else if (phase < 2) {
            ++phase;
        } else {
            order.push_back(x);
            stack.pop_back();
        }
    }
    return order;
}

} // namespace detail

// Classic exponential-space dynamic program over bag colorings c[x,f]:
// minimum size of a partial dominating set through tau_x consistent with f.
// Stores a full 3^{|bag|} table per live node -- the space-hungry foil the
// zeta solver is measured against.  Table residency is metered in the same
// slot units as the solver.
inline long long table_dp_min(const NiceTree& nt, const Graph& g, MeterReport* meter = nullptr) {
    if (nt.width > kTableWidthCap)
        throw std::invalid_argument("table_dp_min: width exceeds 3^k table cap");
    SpaceMeter sm;
    sm.reset();
    std::vector<std::vector<int>> tables(nt.nodes.size());
    auto alloc = [&](int x, std::size_t sz, int fill) {
        tables[x].assign(sz, fill);
        sm.acquire(static_cast<long long>(sz));
    };
    auto free_table = [&](int x) {
        sm.release(static_cast<long long>(tables[x].size()));
        tables[x].clear();
        tables[x].shrink_to_fit();
    };

    for (int x : detail::post_order(nt)) {
        const NiceNode& nd = nt.nodes[x];
        const auto& bag = nd.bag;
        const int w = static_cast<int>(bag.size());
        const std::size_t sz = detail::pow3(w);
        ++sm.evaluations;
        switch (nd.kind) {
            case NiceKind::Leaf:
                alloc(x, 1, 0);
                break;
            case NiceKind::AuxiliaryLeaf: {
                alloc(x, sz, kTableInf);
                auto [u, v] = nd.edge;
                int iu = -1, iv = -1;
                for (int i = 0; i < w; ++i) {
                    if (bag[i] == u) iu = i;
                    if (bag[i] == v) iv = i;
                }
                std::vector<int> digit(w);
                for (std::size_t f = 0; f < sz; ++f) {
                    std::size_t t = f;
                    int csize = 0;
                    bool ok = true;
                    for (int i = 0; i < w; ++i) {
                        digit[i] = static_cast<int>(t % 3);
                        t /= 3;
                        if (digit[i] == 1) ++csize;
                    }
                    for (int i = 0; i < w && ok; ++i) {
                        if (digit[i] != 2) continue;
                        // only the carried edge can dominate here
                        if (i == iu && digit[iv] == 1) continue;
                        if (i == iv && digit[iu] == 1) continue;
                        ok = false;
                    }
                    if (ok) tables[x][f] = csize;
                }
                break;
            }
            case NiceKind::IntroduceVertex: {
                int pos = 0;
                while (bag[pos] != nd.vertex) ++pos;
                const std::size_t lo = detail::pow3(pos);
                alloc(x, sz, kTableInf);
                const auto& ct = tables[nd.child0];
                for (std::size_t cf = 0; cf < ct.size(); ++cf) {
                    if (ct[cf] >= kTableInf) continue;
                    std::size_t base = (cf / lo) * lo * 3 + (cf % lo);
                    tables[x][base + 0 * lo] = ct[cf];            // waiting
                    tables[x][base + 1 * lo] = ct[cf] + 1;        // joins C
                    // dominated is impossible: v is isolated through tau_x
                }
                break;
            }
            case NiceKind::Forget: {
                const auto& cbag = nt.nodes[nd.child0].bag;
                int pos = 0;
                while (cbag[pos] != nd.vertex) ++pos;
                const std::size_t lo = detail::pow3(pos);
                alloc(x, sz, kTableInf);
                const auto& ct = tables[nd.child0];
                for (std::size_t f = 0; f < sz; ++f) {
                    std::size_t base = (f / lo) * lo * 3 + (f % lo);
                    int best = kTableInf;
                    int a = ct[base + 1 * lo];  // v in C
                    int b = ct[base + 2 * lo];  // v dominated
                    best = a < b ? a : b;
                    tables[x][f] = best;
                }
                break;
            }
            case NiceKind::Join: {
                alloc(x, sz, kTableInf);
                const auto& lt = tables[nd.child0];
                const auto& rt = tables[nd.child1];
                std::vector<int> digit(w), dompos;
                for (std::size_t f = 0; f < sz; ++f) {
                    std::size_t t = f;
                    int csize = 0;
                    dompos.clear();
                    for (int i = 0; i < w; ++i) {
                        digit[i] = static_cast<int>(t % 3);
                        t /= 3;
                        if (digit[i] == 1) ++csize;
                        if (digit[i] == 2) dompos.push_back(i);
                    }
                    // distribute each dominated vertex: left, right, or both
                    int best = kTableInf;
                    const std::size_t patterns = detail::pow3(static_cast<int>(dompos.size()));
                    for (std::size_t pat = 0; pat < patterns; ++pat) {
                        std::size_t f1 = f, f2 = f, p = pat;
                        for (int i : dompos) {
                            int choice = static_cast<int>(p % 3);
                            p /= 3;
                            std::size_t lo = detail::pow3(i);
                            if (choice == 0) f2 -= 2 * lo;        // dominated left only
                            else if (choice == 1) f1 -= 2 * lo;   // dominated right only
                        }
                        if (lt[f1] >= kTableInf || rt[f2] >= kTableInf) continue;
                        int val = lt[f1] + rt[f2] - csize;
                        if (val < best) best = val;
                    }
                    tables[x][f] = best;
                }
                break;
            }
        }
        for (int c : {nd.child0, nd.child1})
            if (c >= 0) free_table(c);
    }
    long long ans = tables[nt.root][0];
    if (meter) *meter = {sm.peak_slots, sm.live_slots, sm.evaluations};
    if (ans >= kTableInf || ans > g.n)
        throw std::logic_error("table_dp_min: no dominating set found");
    return ans;
}

// Untransformed reference: entry j of direct_counts(x, C, Y) is the exact
// number of size-j dominating traces through tau_x whose dominated bag set is
// exactly Y.  Joins enumerate all 3^{|Y|} splits; oracle scale only.
class DirectCounter {
public:
    using Vec = CoeffVector<BigInt>;

    DirectCounter(const NiceTree& nt, const Graph& g) : nt_(&nt), g_(&g) {
        if (g.n > kBruteForceCap)
            throw std::invalid_argument("DirectCounter: oracle scale cap exceeded");
    }

    Vec counts(int node, const std::vector<int>& C, const std::vector<int>& Y) {
        const NiceNode& nd = nt_->nodes[node];
        if (!set_subset(C, nd.bag) || !set_subset(Y, nd.bag) || !sets_disjoint(C, Y))
            throw std::invalid_argument("direct_counts: C/Y not a disjoint bag pair");
        return eval(node, C, Y);
    }

private:
    std::uint32_t mask_of(const std::vector<int>& bag, const std::vector<int>& s) const {
        std::uint32_t m = 0;
        for (std::size_t i = 0; i < bag.size(); ++i)
            if (set_contains(s, bag[i])) m |= 1u << i;
        return m;
    }

    Vec eval(int x, const std::vector<int>& C, const std::vector<int>& Y) {
        const NiceNode& nd = nt_->nodes[x];
        auto key = std::make_tuple(x, mask_of(nd.bag, C), mask_of(nd.bag, Y));
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        const std::size_t len = g_->n + 1;
        ExactRing ring;
        Vec out(len);
        switch (nd.kind) {
            case NiceKind::Leaf:
                out.set(0, 1);
                break;
            case NiceKind::AuxiliaryLeaf:
                if (aux_trace_plain_value(nd.edge, C, Y)) out.set(C.size(), 1);
                break;
            case NiceKind::IntroduceVertex: {
                int v = nd.vertex;
                if (set_contains(Y, v)) break;  // isolated: cannot be dominated
                if (set_contains(C, v)) {
                    out = eval(nd.child0, set_without(C, v), Y);
                    out.shift_up();
                } else {
                    out = eval(nd.child0, C, Y);
                }
                break;
            }
            case NiceKind::Forget: {
                int v = nd.vertex;
                out = eval(nd.child0, C, set_with(Y, v));
                out.add_in(eval(nd.child0, set_with(C, v), Y), ring);
                break;
            }
            case NiceKind::Join: {
                const std::size_t patterns = detail::pow3(static_cast<int>(Y.size()));
                for (std::size_t pat = 0; pat < patterns; ++pat) {
                    std::vector<int> y1, y2;
                    std::size_t p = pat;
                    for (int v : Y) {
                        int choice = static_cast<int>(p % 3);
                        p /= 3;
                        if (choice == 0 || choice == 2) y1.push_back(v);
                        if (choice == 1 || choice == 2) y2.push_back(v);
                    }
                    Vec l = eval(nd.child0, C, y1);
                    Vec r = eval(nd.child1, C, y2);
                    out.add_in(convolve_offset(l, r, C.size(), ring), ring);
                }
                break;
            }
        }
        memo_[key] = out;
        return out;
    }

    const NiceTree* nt_;
    const Graph* g_;
    std::map<std::tuple<int, std::uint32_t, std::uint32_t>, Vec> memo_;
};

} // namespace zetadom
