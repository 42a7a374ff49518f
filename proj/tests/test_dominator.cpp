#include "doctest.h"

#include <algorithm>
#include <random>

#include "safeseq/dominator.hpp"
#include "testutil.hpp"

using namespace safeseq;
using namespace safeseq::testutil;

namespace {

// ancestors of v in the tree (inclusive), as a sorted vector
std::vector<NodeId> tree_ancestors(const DominatorTree& t, NodeId v) {
    std::vector<NodeId> out;
    NodeId cur = v;
    while (true) {
        out.push_back(cur);
        if (cur == t.root) break;
        cur = t.parent[cur];
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("immediate dominators on a hand built graph") {
    // 0 -> 1, 0 -> 2, 1 -> 3, 2 -> 3, 3 -> 4
    DiGraph g(5);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 2, 1.0);
    g.add_arc(1, 3, 1.0);
    g.add_arc(2, 3, 1.0);
    g.add_arc(3, 4, 1.0);
    StDag d = validate_st_dag(g, 0, 4);

    DominatorTree st = build_dominator_tree(d, Direction::TowardS);
    CHECK(st.root == 0);
    CHECK(st.parent[0] == 0);
    CHECK(st.parent[1] == 0);
    CHECK(st.parent[2] == 0);
    CHECK(st.parent[3] == 0); // two ways in, so the merge point hangs off the root
    CHECK(st.parent[4] == 3);
    CHECK(st.depth[4] == 2);

    DominatorTree tt = build_dominator_tree(d, Direction::TowardT);
    CHECK(tt.root == 4);
    CHECK(tt.parent[3] == 4);
    CHECK(tt.parent[1] == 3);
    CHECK(tt.parent[2] == 3);
    CHECK(tt.parent[0] == 3);

    CHECK(st.is_ancestor(0, 4));
    CHECK(st.is_ancestor(3, 4));
    CHECK_FALSE(st.is_ancestor(1, 4));
    CHECK(st.is_ancestor(4, 4));
    CHECK_FALSE(st.is_strict_ancestor(4, 4));
    CHECK(st.is_leaf(1));
    CHECK_FALSE(st.is_leaf(3));

    CHECK(st.root_path(4) == std::vector<NodeId>({0, 3, 4}));
    CHECK(tt.root_path(0) == std::vector<NodeId>({4, 3, 0}));
}

TEST_CASE("dom_k walks strict ancestors and saturates at the root") {
    StDag p = path_dag(5);
    DominatorTree st = build_dominator_tree(p, Direction::TowardS);
    CHECK(dom_k(st, 4, 0) == 4);
    CHECK(dom_k(st, 4, 1) == 3);
    CHECK(dom_k(st, 4, 4) == 0);
    CHECK(dom_k(st, 4, 99) == 0);
}

TEST_CASE("tree ancestors equal brute force cut nodes") {
    auto check_graph = [](const StDag& g) {
        DominatorTree st = build_dominator_tree(g, Direction::TowardS);
        DominatorTree tt = build_dominator_tree(g, Direction::TowardT);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            std::vector<NodeId> s_cut = cutnodes_bruteforce(g, g.source, v);
            std::sort(s_cut.begin(), s_cut.end());
            CHECK(tree_ancestors(st, v) == s_cut);
            std::vector<NodeId> t_cut = cutnodes_bruteforce(g, v, g.sink);
            std::sort(t_cut.begin(), t_cut.end());
            CHECK(tree_ancestors(tt, v) == t_cut);
        }
    };
    for_each_st_dag(5, check_graph);
    std::mt19937 rng(21);
    for (int trial = 0; trial < 100; ++trial) check_graph(random_st_dag(rng, 8));
}

TEST_CASE("cutnodes are ordered along the topological order") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        StDag g = random_st_dag(rng, 8);
        std::vector<NodeId> cut = cutnodes_bruteforce(g, g.source, g.sink);
        REQUIRE(!cut.empty());
        CHECK(cut.front() == g.source);
        CHECK(cut.back() == g.sink);
        for (std::size_t i = 1; i < cut.size(); ++i)
            CHECK(g.topo_pos[cut[i - 1]] < g.topo_pos[cut[i]]);
    }
}

TEST_CASE("cutnodes of an unreachable pair throw") {
    StDag d = diamond();
    CHECK_THROWS_AS(cutnodes_bruteforce(d, 1, 2), Error);
}

TEST_CASE("neighborhood test agrees with the tree's internal nodes") {
    auto check_graph = [](const StDag& g) {
        for (Direction dir : {Direction::TowardS, Direction::TowardT}) {
            DominatorTree tree = build_dominator_tree(g, dir);
            for (NodeId u = 0; u < g.node_count(); ++u) {
                // u dominates someone else iff it is a non-leaf of the tree
                CHECK(is_dominator_by_neighborhood(g, u, dir) == !tree.is_leaf(u));
            }
        }
    };
    for_each_st_dag(5, check_graph);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) check_graph(random_st_dag(rng, 8));
}

TEST_CASE("extension stitches both root paths around the anchor") {
    // diamond plus a tail: 0 is the source, 4 the sink
    DiGraph g(5);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 2, 1.0);
    g.add_arc(1, 3, 1.0);
    g.add_arc(2, 3, 1.0);
    g.add_arc(3, 4, 1.0);
    StDag d = validate_st_dag(g, 0, 4);
    DominatorTree st = build_dominator_tree(d, Direction::TowardS);
    DominatorTree tt = build_dominator_tree(d, Direction::TowardT);

    Extension e1 = extension(st, tt, 1);
    CHECK(e1.anchor == 1);
    CHECK(e1.sequence == std::vector<NodeId>({0, 1, 3, 4}));

    Extension e3 = extension(st, tt, 3);
    CHECK(e3.sequence == std::vector<NodeId>({0, 3, 4}));

    Extension es = extension(st, tt, 0);
    CHECK(es.sequence == std::vector<NodeId>({0, 3, 4}));
}

TEST_CASE("extensions are safe walks by construction") {
    std::mt19937 rng(24);
    for (int trial = 0; trial < 60; ++trial) {
        StDag g = random_st_dag(rng, 7);
        DominatorTree st = build_dominator_tree(g, Direction::TowardS);
        DominatorTree tt = build_dominator_tree(g, Direction::TowardT);
        auto paths = all_st_paths(g, kDefaultPathLimit);
        for (NodeId v = 0; v < g.node_count(); ++v) {
            Extension e = extension(st, tt, v);
            // every path through v contains the whole extension in order
            for (const auto& path : paths) {
                if (std::find(path.begin(), path.end(), v) == path.end()) continue;
                CHECK(is_subsequence(e.sequence, path));
            }
        }
    }
}

TEST_CASE("debug renderings mention every node") {
    StDag d = diamond();
    DominatorTree st = build_dominator_tree(d, Direction::TowardS);
    std::string text = tree_to_text(st);
    std::string dot = tree_to_dot(st);
    for (NodeId v = 0; v < d.node_count(); ++v) {
        CHECK(text.find(std::to_string(v)) != std::string::npos);
        CHECK(dot.find(std::to_string(v)) != std::string::npos);
    }
    CHECK(dot.find("digraph") != std::string::npos);
}
