#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "zetadom/elimination.hpp"
#include "zetadom/generators.hpp"
#include "zetadom/solver.hpp"
#include "zetadom/table_dp.hpp"

using namespace zetadom;

namespace {
NiceTree nice_of(const Graph& g) {
    return make_nice(decompose_heuristic(g, ElimStrategy::MinFill), g);
}
std::vector<BigInt> as_vec(const CoeffVector<BigInt>& v) {
    std::vector<BigInt> out;
    for (std::size_t j = 0; j < v.size(); ++j) out.push_back(v.get(j));
    return out;
}
std::vector<int> subset_of(std::uint32_t mask, const std::vector<int>& bag) {
    std::vector<int> out;
    for (std::size_t i = 0; i < bag.size(); ++i)
        if (mask >> i & 1) out.push_back(bag[i]);
    return out;
}
} // namespace

TEST_CASE("table DP minimum on small shapes") {
    Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    CHECK(table_dp_min(nice_of(p3), p3) == 1);

    Instance grid = gen_grid(4, 4);
    NiceTree nt = make_nice(grid.td, grid.graph);
    ExactRing r;
    CHECK(table_dp_min(nt, grid.graph) == brute_force_counts(grid.graph).first_nonzero(r));
}

TEST_CASE("table DP equals the zeta solver beyond brute-force scale") {
    Instance inst = gen_partial_ktree(40, 3, 12345, 300, 5);
    NiceTree nt = make_nice(inst.td, inst.graph);
    CHECK(table_dp_min(nt, inst.graph) == solve_min_exact(nt, inst.graph));
}

TEST_CASE("table DP meters its table residency") {
    Instance inst = gen_partial_ktree(25, 6, 9, 300, 3);
    NiceTree nt = make_nice(inst.td, inst.graph);
    MeterReport meter{};
    table_dp_min(nt, inst.graph, &meter);
    CHECK(meter.peak_slots >= 3 * 3 * 3 * 3 * 3 * 3);  // a 3^{k} table was resident
    CHECK(meter.live_slots == 1);                       // only the root table remains
}

TEST_CASE("direct counts at a leaf and at an auxiliary leaf") {
    Graph g = make_graph(2, {{0, 1}});
    NiceTree nt = nice_of(g);
    DirectCounter dc(nt, g);
    for (std::size_t i = 0; i < nt.nodes.size(); ++i) {
        if (nt.nodes[i].kind == NiceKind::Leaf) {
            auto v = dc.counts(static_cast<int>(i), {}, {});
            CHECK(v.get(0) == 1);
            CHECK(v.get(1) == 0);
        }
        if (nt.nodes[i].kind == NiceKind::AuxiliaryLeaf) {
            // C = {v}, Y = {u}: the one pre-zeta trace, value 1 at entry 1
            auto v = dc.counts(static_cast<int>(i), {1}, {0});
            CHECK(v.get(1) == 1);
            CHECK(v.get(0) == 0);
            auto w = dc.counts(static_cast<int>(i), {1}, {});
            for (std::size_t j = 0; j < w.size(); ++j) CHECK(w.get(j) == 0);
        }
    }
}

TEST_CASE("direct counts at the root match brute force") {
    Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
    NiceTree nt = nice_of(p3);
    DirectCounter dc(nt, p3);
    CHECK(as_vec(dc.counts(nt.root, {}, {})) == std::vector<BigInt>{0, 1, 3, 1});
}

TEST_CASE("zeta_counts is the subset sum of direct counts, node by node") {
    std::mt19937_64 rng(888);
    ExactRing ring;
    for (int t = 0; t < 6; ++t) {
        int n = 2 + static_cast<int>(rng_below(rng, 6));
        Graph g = gen_er(n, 400, rng());
        NiceTree nt = nice_of(g);
        ZetaSolver<ExactRing> solver(nt, g);
        DirectCounter dc(nt, g);
        for (std::size_t x = 0; x < nt.nodes.size(); ++x) {
            const auto& bag = nt.nodes[x].bag;
            const std::uint32_t full = (1u << bag.size()) - 1;
            for (std::uint32_t cm = 0;; cm = (cm - full) & full) {
                std::uint32_t rest = full & ~cm;
                for (std::uint32_t dm = 0;; dm = (dm - rest) & rest) {
                    auto C = subset_of(cm, bag);
                    auto D = subset_of(dm, bag);
                    auto lhs = solver.zeta_counts({static_cast<int>(x), C, D});
                    CoeffVector<BigInt> sum(g.n + 1);
                    for (std::uint32_t ym = 0;; ym = (ym - dm) & dm) {
                        sum.add_in(dc.counts(static_cast<int>(x), C, subset_of(ym, bag)), ring);
                        if (ym == dm) break;
                    }
                    CHECK(as_vec(lhs) == as_vec(sum));
                    if (dm == rest) break;
                }
                if (cm == full) break;
            }
        }
    }
}

TEST_CASE("first nonzero of direct counts equals both minima") {
    std::mt19937_64 rng(999);
    ExactRing ring;
    for (int t = 0; t < 10; ++t) {
        int n = 1 + static_cast<int>(rng_below(rng, 9));
        Graph g = gen_er(n, 350, rng());
        NiceTree nt = nice_of(g);
        DirectCounter dc(nt, g);
        long long direct_min = dc.counts(nt.root, {}, {}).first_nonzero(ring);
        CHECK(direct_min == table_dp_min(nt, g));
        CHECK(direct_min == brute_force_counts(g).first_nonzero(ring));
    }
}

TEST_CASE("width cap is enforced") {
    Graph g = make_graph(18, {});
    TreeDecomposition td;
    std::vector<int> bag(18);
    for (int i = 0; i < 18; ++i) bag[i] = i;
    td.bags = {bag};
    NiceTree nt = make_nice(td, g);
    CHECK_THROWS_AS(table_dp_min(nt, g), std::invalid_argument);
}

TEST_CASE("deep chain decompositions run iteratively without recursion limits") {
    // a long path with the min-degree chain decomposition: thousands of nice
    // nodes on one root-to-leaf path; table DP and validation must not recurse
    Instance inst = gen_path(400);
    Graph g = inst.graph;
    auto td = decompose_heuristic(g, ElimStrategy::MinDegree);
    NiceTree nt = make_nice(td, g);
    auto rep = validate_nice(nt, g);
    REQUIRE(rep.ok);
    CHECK(rep.depth > 400);
    CHECK(table_dp_min(nt, g) == (400 + 2) / 3);
}
