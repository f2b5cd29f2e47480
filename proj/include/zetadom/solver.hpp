#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zetadom/coeff.hpp"
#include "zetadom/graph.hpp"
#include "zetadom/nice_tree.hpp"
#include "zetadom/ring.hpp"
#include "zetadom/setops.hpp"

namespace zetadom {

// One strand index: a node together with the disjoint (C, D) bag subsets;
// W = bag \ (C u D) is implicit.
struct Assignment {
    int node = -1;
    std::vector<int> C, D;  // sorted
};

inline void check_assignment(const NiceTree& nt, const Assignment& a) {
    if (a.node < 0 || a.node >= static_cast<int>(nt.nodes.size()))
        throw std::invalid_argument("assignment: node out of range");
    const auto& bag = nt.nodes[a.node].bag;
    if (!set_subset(a.C, bag) || !set_subset(a.D, bag))
        throw std::invalid_argument("assignment: C or D not within the bag");
    if (!sets_disjoint(a.C, a.D))
        throw std::invalid_argument("assignment: C and D intersect");
}

// Residency instrumentation: slots count logical coefficient entries (each
// live vector accounts for its full n+1 logical length).
struct SpaceMeter {
    long long live_slots = 0;
    long long peak_slots = 0;
    long long evaluations = 0;
    bool ran = false;

    void reset() { live_slots = peak_slots = evaluations = 0; ran = true; }
    void acquire(long long k) {
        live_slots += k;
        if (live_slots > peak_slots) peak_slots = live_slots;
    }
    void release(long long k) {
        live_slots -= k;
        if (live_slots < 0) throw std::logic_error("space meter underflow");
    }
};

struct MeterReport {
    long long peak_slots = 0;
    long long live_slots = 0;
    long long evaluations = 0;
};

// ---- auxiliary-leaf value conventions ----------------------------------
//
// The set of bag vertices an auxiliary leaf's single edge actually dominates:
// an endpoint outside C whose other endpoint is in C.  Everything else in the
// bag is isolated there.
inline std::vector<int> aux_dominated_endpoints(std::pair<int, int> edge,
                                                const std::vector<int>& C) {
    auto [u, v] = edge;
    std::vector<int> t;
    bool cu = set_contains(C, u), cv = set_contains(C, v);
    if (cv && !cu) t.push_back(u);
    if (cu && !cv) t.push_back(v);
    std::sort(t.begin(), t.end());
    return t;
}

// Trace convention (the solver's): Y names exactly the dominated endpoints.
// Plain value is the indicator of that one set; its zeta transform is the
// containment test.  Values are 0/1.
inline int aux_trace_plain_value(std::pair<int, int> edge, const std::vector<int>& C,
                                 const std::vector<int>& Y) {
    return Y == aux_dominated_endpoints(edge, C) ? 1 : 0;
}
inline int aux_trace_zeta_value(std::pair<int, int> edge, const std::vector<int>& C,
                                const std::vector<int>& D) {
    return set_subset(aux_dominated_endpoints(edge, C), D) ? 1 : 0;
}

// Optional-domination convention: every subset of the dominated endpoints
// counts as its own trace, so the zeta value is 2^{|D n T|} -- the classic
// four-case table with values 1 and 2 (2 exactly when C pins an endpoint of
// the edge inside D).  Kept for the case-table cross-check; feeding these
// values into the counting recursion inflates multiplicities, so the solver
// itself uses the trace convention above.
inline int aux_optional_plain_value(std::pair<int, int> edge, const std::vector<int>& C,
                                    const std::vector<int>& Y) {
    return set_subset(Y, aux_dominated_endpoints(edge, C)) ? 1 : 0;
}
inline int aux_optional_zeta_value(std::pair<int, int> edge, const std::vector<int>& C,
                                   const std::vector<int>& D) {
    auto [u, v] = edge;
    std::vector<int> di;  // D n {u, v}: vertices of D beyond the edge reduce away
    if (set_contains(D, std::min(u, v))) di.push_back(std::min(u, v));
    if (set_contains(D, std::max(u, v))) di.push_back(std::max(u, v));
    if (di.empty()) return 1;
    auto t = aux_dominated_endpoints(edge, C);
    int k = 0;
    for (int w : di)
        if (set_contains(t, w)) ++k;
    return 1 << k;
}

// Vertex/edge annotations for self-reduction: excluded vertices may not enter
// the dominating set (and are exempt); exempt vertices need not be dominated;
// disabled edges behave as absent.
struct Annotations {
    std::vector<char> exempt;    // size n (empty = none)
    std::vector<char> excluded;  // size n (empty = none)
    std::set<std::pair<int, int>> disabled_edges;  // normalized u < v

    bool is_exempt(int v) const { return !exempt.empty() && exempt[v]; }
    bool is_excluded(int v) const { return !excluded.empty() && excluded[v]; }
    bool edge_disabled(int u, int v) const {
        if (disabled_edges.empty()) return false;
        if (u > v) std::swap(u, v);
        return disabled_edges.count({u, v}) > 0;
    }
};

// Polynomial-space evaluator of the zeta-transformed coefficient vectors.
// One strand (node, C, D) is evaluated at a time, depth first; at most a
// constant number of coefficient vectors is resident per tree level, so the
// live footprint is O(n * depth) ring values.  No table is ever stored.
template <class Ring>
class ZetaSolver {
public:
    using Value = typename Ring::Value;
    using Vec = CoeffVector<Value>;

    ZetaSolver(const NiceTree& nt, const Graph& g, Ring ring = Ring{})
        : nt_(&nt), g_(&g), ring_(std::move(ring)) {}
    ZetaSolver(NiceTree&&, const Graph&, Ring = Ring{}) = delete;
    ZetaSolver(const NiceTree&, Graph&&, Ring = Ring{}) = delete;

    void set_annotations(Annotations a) { ann_ = std::move(a); }
    const Annotations& annotations() const { return ann_; }

    // Full coefficient vector of one strand; entry j = (zeta a_{x,j}^C)[D].
    Vec zeta_counts(const Assignment& a) {
        check_assignment(*nt_, a);
        meter_.reset();
        Tracked t = eval(a.node, a.C, a.D);
        return std::move(t.vec);
    }

    // Exact count of dominating sets of every size; root strand only.
    Vec counts_at_root() {
        if constexpr (!Ring::exact)
            throw std::logic_error("counts_at_root: modular ring refused, counts must be exact");
        meter_.reset();
        Tracked t = eval(nt_->root, {}, {});
        return std::move(t.vec);
    }

    // Least j with a nonzero root entry; -1 only if every entry vanished
    // (impossible in exact mode, a false-zero signal in modular mode).
    long long solve_min() {
        meter_.reset();
        Tracked t = eval(nt_->root, {}, {});
        return t.vec.first_nonzero(ring_);
    }

    MeterReport meter_report() const {
        if (!meter_.ran) throw std::logic_error("no run recorded");
        return {meter_.peak_slots, meter_.live_slots, meter_.evaluations};
    }
    const Ring& ring() const { return ring_; }

private:
    struct Tracked {
        Vec vec;
        SpaceMeter* meter = nullptr;
        long long amount = 0;

        Tracked() = default;
        Tracked(Vec v, SpaceMeter* m, long long a) : vec(std::move(v)), meter(m), amount(a) {
            if (meter) meter->acquire(amount);
        }
        Tracked(const Tracked&) = delete;
        Tracked& operator=(const Tracked&) = delete;
        Tracked(Tracked&& o) noexcept
            : vec(std::move(o.vec)), meter(o.meter), amount(o.amount) {
            o.meter = nullptr;
            o.amount = 0;
        }
        Tracked& operator=(Tracked&& o) noexcept {
            if (this != &o) {
                if (meter) meter->release(amount);
                vec = std::move(o.vec);
                meter = o.meter;
                amount = o.amount;
                o.meter = nullptr;
                o.amount = 0;
            }
            return *this;
        }
        ~Tracked() {
            if (meter) meter->release(amount);
        }
    };

    Tracked track(Vec v) { return Tracked(std::move(v), &meter_, g_->n + 1); }

    Tracked eval(int x, const std::vector<int>& C, const std::vector<int>& D) {
        ++meter_.evaluations;
        const NiceNode& nd = nt_->nodes[x];
        const std::size_t len = g_->n + 1;
        switch (nd.kind) {
            case NiceKind::Leaf: {
                Vec v(len);
                v.set(0, ring_.one());
                return track(std::move(v));
            }
            case NiceKind::AuxiliaryLeaf: {
                Vec v(len);
                int val = ann_.edge_disabled(nd.edge.first, nd.edge.second)
                              ? 1
                              : aux_trace_zeta_value(nd.edge, C, D);
                if (val) v.set(C.size(), ring_.one());
                return track(std::move(v));
            }
            case NiceKind::IntroduceVertex: {
                int v = nd.vertex;
                if (set_contains(C, v)) {
                    // v joins the trace: sizes shift by one
                    Tracked t = eval(nd.child0, set_without(C, v), D);
                    t.vec.shift_up();
                    return t;
                }
                // v in D: it is isolated below, so the zeta sum over Y <= D
                // collapses to Y <= D - {v}; v in W: plain pass-through
                return eval(nd.child0, C, set_without(D, v));
            }
            case NiceKind::Forget: {
                int v = nd.vertex;
                Tracked acc = eval(nd.child0, C, set_with(D, v));
                if (!ann_.is_exempt(v)) {
                    Tracked t = eval(nd.child0, C, D);
                    acc.vec.sub_in(t.vec, ring_);
                }
                if (!ann_.is_excluded(v)) {
                    Tracked t = eval(nd.child0, set_with(C, v), D);
                    acc.vec.add_in(t.vec, ring_);
                }
                return acc;
            }
            case NiceKind::Join: {
                // auxiliary joins reduce to a 0/1 scalar: no second vector
                const NiceNode& rhs = nt_->nodes[nd.child1];
                if (rhs.kind == NiceKind::AuxiliaryLeaf) {
                    int val = ann_.edge_disabled(rhs.edge.first, rhs.edge.second)
                                  ? 1
                                  : aux_trace_zeta_value(rhs.edge, C, D);
                    if (val == 0) return track(Vec(len));
                    return eval(nd.child0, C, D);
                }
                Tracked l = eval(nd.child0, C, D);
                Tracked r = eval(nd.child1, C, D);
                return track(convolve_offset(l.vec, r.vec, C.size(), ring_));
            }
        }
        throw std::logic_error("unreachable node kind");
    }

    const NiceTree* nt_;
    const Graph* g_;
    Ring ring_;
    Annotations ann_;
    SpaceMeter meter_;
};

inline long long solve_min_exact(const NiceTree& nt, const Graph& g,
                                 MeterReport* meter = nullptr) {
    ZetaSolver<ExactRing> s(nt, g);
    long long r = s.solve_min();
    if (meter) *meter = s.meter_report();
    return r;
}

// Modular run: one prime per solve, answer confirmed with an independently
// drawn second prime; disagreement (a false zero) redraws both.
inline long long solve_min_modular(const NiceTree& nt, const Graph& g, std::uint64_t seed,
                                   MeterReport* meter = nullptr,
                                   const Annotations* ann = nullptr) {
    std::mt19937_64 rng(seed);
    for (int round = 0; round < 16; ++round) {
        ZetaSolver<ModularRing> s1(nt, g, ModularRing{draw_prime(rng)});
        ZetaSolver<ModularRing> s2(nt, g, ModularRing{draw_prime(rng)});
        if (ann) {
            s1.set_annotations(*ann);
            s2.set_annotations(*ann);
        }
        long long j1 = s1.solve_min();
        long long j2 = s2.solve_min();
        if (meter) *meter = s2.meter_report();
        if (j1 == j2 && j1 >= 0) return j1;
    }
    throw std::runtime_error("solve_min_modular: primes kept disagreeing (vanishing counts?)");
}

// Self-reduction to an actual minimum dominating set: repeatedly commit a
// vertex whose removal (with its closed neighborhood marked pre-dominated)
// drops the annotated minimum by one.  At most n*(n+1) solver calls, all on
// the original nice tree.
inline std::vector<int> extract_witness(const NiceTree& nt, const Graph& g) {
    Annotations ann;
    ann.exempt.assign(g.n, 0);
    ann.excluded.assign(g.n, 0);
    long long k;
    {
        ZetaSolver<ExactRing> base(nt, g);
        k = base.solve_min();
    }
    std::vector<int> chosen;
    while (k > 0) {
        bool committed = false;
        for (int v = 0; v < g.n && !committed; ++v) {
            if (ann.excluded[v]) continue;
            Annotations cand = ann;
            cand.excluded[v] = 1;
            cand.exempt[v] = 1;
            for (int u : g.adj[v]) {
                if (!ann.edge_disabled(u, v)) cand.exempt[u] = 1;
                cand.disabled_edges.insert({std::min(u, v), std::max(u, v)});
            }
            ZetaSolver<ExactRing> probe(nt, g);
            probe.set_annotations(cand);
            if (probe.solve_min() == k - 1) {
                chosen.push_back(v);
                ann = std::move(cand);
                --k;
                committed = true;
            }
        }
        if (!committed) throw std::logic_error("extract_witness: no extendable vertex");
    }
    return chosen;
}

} // namespace zetadom
