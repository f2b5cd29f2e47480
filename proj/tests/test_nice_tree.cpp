#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "zetadom/elimination.hpp"
#include "zetadom/generators.hpp"
#include "zetadom/nice_tree.hpp"

using namespace zetadom;

namespace {

int count_kind(const NiceTree& nt, NiceKind k) {
    int c = 0;
    for (const auto& nd : nt.nodes)
        if (nd.kind == k) ++c;
    return c;
}

// introduced edge sets per node, for the partition property
void collect_edges(const NiceTree& nt, int x, std::set<std::pair<int, int>>& out) {
    const auto& nd = nt.nodes[x];
    if (nd.kind == NiceKind::AuxiliaryLeaf) out.insert(nd.edge);
    for (int c : {nd.child0, nd.child1})
        if (c >= 0) collect_edges(nt, c, out);
}

} // namespace

TEST_CASE("P3 nice tree: two auxiliary leaves, empty root, width 1") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    NiceTree nt = make_nice(td, g);
    auto rep = validate_nice(nt, g);
    REQUIRE(rep.ok);
    CHECK(count_kind(nt, NiceKind::AuxiliaryLeaf) == 2);
    CHECK(nt.nodes[nt.root].bag.empty());
    CHECK(rep.width == 1);
}

TEST_CASE("single vertex: Leaf -> Introduce -> Forget, no auxiliary leaf") {
    Graph g = make_graph(1, {});
    TreeDecomposition td;
    td.bags = {{0}};
    NiceTree nt = make_nice(td, g);
    REQUIRE(validate_nice(nt, g).ok);
    CHECK(nt.node_count() == 3);
    CHECK(count_kind(nt, NiceKind::AuxiliaryLeaf) == 0);
    CHECK(nt.nodes[nt.root].kind == NiceKind::Forget);
    CHECK(nt.nodes[nt.nodes[nt.root].child0].kind == NiceKind::IntroduceVertex);
}

TEST_CASE("K3 from one bag: three auxiliary leaves, width 2") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    TreeDecomposition td;
    td.bags = {{0, 1, 2}};
    NiceTree nt = make_nice(td, g);
    auto rep = validate_nice(nt, g);
    REQUIRE(rep.ok);
    CHECK(count_kind(nt, NiceKind::AuxiliaryLeaf) == 3);
    CHECK(rep.width == 2);
}

TEST_CASE("empty graph gives a single leaf root") {
    Graph g = make_graph(0, {});
    TreeDecomposition td;
    td.bags = {{}};
    NiceTree nt = make_nice(td, g);
    REQUIRE(validate_nice(nt, g).ok);
    CHECK(nt.node_count() == 1);
}

TEST_CASE("make_nice rejects an invalid decomposition") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    CHECK_THROWS_AS(make_nice(td, g), std::invalid_argument);
}

TEST_CASE("randomized construction always validates") {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng_below(rng, 30));
        Graph g = gen_er(n, 80 + static_cast<int>(rng_below(rng, 250)), rng());
        auto td = decompose_heuristic(g, ElimStrategy::MinFill);
        NiceTree nt = make_nice(td, g);
        auto rep = validate_nice(nt, g);
        INFO("n=" << n << " m=" << g.m());
        for (auto& v : rep.violations) INFO(v);
        REQUIRE(rep.ok);
        CHECK(rep.width == width(td));
        CHECK(rep.depth == nt.depth);
        CHECK(rep.branching_depth == nt.branching_depth);
        // node count stays linear in k * (decomposition nodes) + edges
        auto bound = (3 * (width(td) + 2) + 8) * td.bags.size() + 2 * g.m() + 10;
        CHECK(nt.node_count() <= bound);
    }
}

TEST_CASE("join children partition introduced edges; root carries all of them") {
    std::mt19937_64 rng(62);
    for (int t = 0; t < 15; ++t) {
        int n = 2 + static_cast<int>(rng_below(rng, 12));
        Graph g = gen_er(n, 350, rng());
        NiceTree nt = make_nice(decompose_heuristic(g, ElimStrategy::MinDegree), g);
        std::set<std::pair<int, int>> all;
        collect_edges(nt, nt.root, all);
        std::set<std::pair<int, int>> expect(g.edges.begin(), g.edges.end());
        CHECK(all == expect);
        for (const auto& nd : nt.nodes) {
            if (nd.kind != NiceKind::Join) continue;
            std::set<std::pair<int, int>> l, r;
            collect_edges(nt, nd.child0, l);
            collect_edges(nt, nd.child1, r);
            for (auto& e : l) CHECK(r.count(e) == 0);
        }
    }
}

TEST_CASE("mutations are caught") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    NiceTree nt = make_nice(td, g);

    SECTION("edge introduced twice") {
        NiceTree bad = nt;
        for (auto& nd : bad.nodes)
            if (nd.kind == NiceKind::AuxiliaryLeaf) nd.edge = {0, 1};
        auto rep = validate_nice(bad, g);
        REQUIRE_FALSE(rep.ok);
        bool found = false;
        for (auto& v : rep.violations)
            found = found || v.find("introduced twice") != std::string::npos;
        CHECK(found);
    }
    SECTION("nonempty root bag") {
        NiceTree bad = nt;
        bad.nodes[bad.root].bag = {0};
        auto rep = validate_nice(bad, g);
        REQUIRE_FALSE(rep.ok);
        bool found = false;
        for (auto& v : rep.violations)
            found = found || v.find("nonempty root bag") != std::string::npos;
        CHECK(found);
    }
    SECTION("join child bag mismatch") {
        NiceTree bad = nt;
        for (auto& nd : bad.nodes)
            if (nd.kind == NiceKind::AuxiliaryLeaf) { nd.bag = {}; break; }
        CHECK_FALSE(validate_nice(bad, g).ok);
    }
}

TEST_CASE("construction is deterministic") {
    Graph g = gen_er(18, 300, 77);
    auto td = decompose_heuristic(g, ElimStrategy::MinFill);
    std::ostringstream a, b;
    emit_nice_debug(make_nice(td, g), a);
    emit_nice_debug(make_nice(td, g), b);
    CHECK(a.str() == b.str());
}

TEST_CASE("golden debug emission for P3") {
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    TreeDecomposition td;
    td.bags = {{0, 1}, {1, 2}};
    td.tree_edges = {{0, 1}};
    std::ostringstream os;
    emit_nice_debug(make_nice(td, g), os);
    CHECK(os.str() ==
          "0 Leaf {}\n"
          "1 IntroduceVertex(1) {1} 0\n"
          "2 IntroduceVertex(2) {1,2} 1\n"
          "3 AuxiliaryLeaf(1,2) {1,2}\n"
          "4 Join {1,2} 2 3\n"
          "5 Forget(2) {1} 4\n"
          "6 IntroduceVertex(0) {0,1} 5\n"
          "7 AuxiliaryLeaf(0,1) {0,1}\n"
          "8 Join {0,1} 6 7\n"
          "9 Forget(0) {1} 8\n"
          "10 Forget(1) {} 9 root\n");
}
