#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "safeseq/safety_subset.hpp"
#include "testutil.hpp"

using namespace safeseq;
using namespace safeseq::testutil;

namespace {

std::vector<NodeId> all_nodes(const StDag& g) {
    std::vector<NodeId> c(g.node_count());
    std::iota(c.begin(), c.end(), NodeId{0});
    return c;
}

} // namespace

TEST_CASE("blue forest skips non-members") {
    // path 0..4, members {1, 3}: blue parent of 3 is 1, 1 is a root
    StDag p = path_dag(5);
    DominatorTree st = build_dominator_tree(p, Direction::TowardS);
    std::vector<char> in_set(5, 0);
    in_set[1] = in_set[3] = 1;
    BlueTree blue = build_blue_tree(st, in_set);
    CHECK(blue.blue_parent[3] == 1);
    CHECK(blue.blue_parent[1] == kNoNode);
    CHECK(blue.blue_children[1] == 1);
    CHECK(blue.blue_children[3] == 0);
    CHECK(blue.blue_parent[0] == kNoNode);
    CHECK(blue.blue_parent[2] == kNoNode);
}

TEST_CASE("blue forest branches where the base tree does") {
    // diamond: members {1, 2, 3}, s-tree parents are all 0
    StDag d = diamond();
    DominatorTree st = build_dominator_tree(d, Direction::TowardS);
    std::vector<char> in_set(4, 0);
    in_set[1] = in_set[2] = in_set[3] = 1;
    BlueTree blue = build_blue_tree(st, in_set);
    CHECK(blue.blue_parent[1] == kNoNode);
    CHECK(blue.blue_parent[2] == kNoNode);
    CHECK(blue.blue_parent[3] == kNoNode); // idom of 3 is 0, not a member
    CHECK(blue.blue_children[1] == 0);
}

TEST_CASE("univocal paths on a path graph with full membership") {
    StDag p = path_dag(4);
    DominatorTree st = build_dominator_tree(p, Direction::TowardS);
    DominatorTree tt = build_dominator_tree(p, Direction::TowardT);
    std::vector<char> in_set(4, 1);
    BlueTree sb = build_blue_tree(st, in_set);
    BlueTree tb = build_blue_tree(tt, in_set);
    auto paths = common_univocal_paths(sb, tb);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0].nodes == std::vector<NodeId>({0, 1, 2, 3}));
}

TEST_CASE("empty subset yields no sequences") {
    StDag d = diamond();
    SafeSequenceSet set = maximal_safe_sequences_subset(d, {});
    CHECK(set.sequences.empty());
    CHECK(set.total_length() == 0);
}

TEST_CASE("full subset matches the unrestricted computation") {
    auto check_graph = [](const StDag& g) {
        SafeSequenceSet restricted = maximal_safe_sequences_subset(g, all_nodes(g));
        SafeSequenceSet full = maximal_safe_sequences(g);
        CHECK(same_sequence_set(restricted.sequences, full.sequences));
    };
    for_each_st_dag(5, check_graph);
    std::mt19937 rng(41);
    for (int trial = 0; trial < 100; ++trial) check_graph(random_st_dag(rng, 8));
}

TEST_CASE("hand worked subset on the double diamond") {
    // diamond stacked on a diamond, shared middle node 3
    DiGraph g(7);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 2, 1.0);
    g.add_arc(1, 3, 1.0);
    g.add_arc(2, 3, 1.0);
    g.add_arc(3, 4, 1.0);
    g.add_arc(3, 5, 1.0);
    g.add_arc(4, 6, 1.0);
    g.add_arc(5, 6, 1.0);
    StDag d = validate_st_dag(g, 0, 6);

    SUBCASE("covering only the first diamond's branches") {
        SafeSequenceSet set = maximal_safe_sequences_subset(d, {1, 2});
        REQUIRE(set.sequences.size() == 2);
        CHECK(same_sequence_set(set.sequences, {{0, 1, 3, 6}, {0, 2, 3, 6}}));
    }
    SUBCASE("covering one node gives its full extension") {
        SafeSequenceSet set = maximal_safe_sequences_subset(d, {4});
        REQUIRE(set.sequences.size() == 1);
        CHECK(set.sequences[0] == std::vector<NodeId>({0, 3, 4, 6}));
    }
    SUBCASE("covering the shared middle merges nothing extra") {
        SafeSequenceSet set = maximal_safe_sequences_subset(d, {3});
        REQUIRE(set.sequences.size() == 1);
        CHECK(set.sequences[0] == std::vector<NodeId>({0, 3, 6}));
    }
}

TEST_CASE("subset oracle basics") {
    StDag d = diamond();
    CHECK(oracle_is_safe_subset(d, {1}, {0, 1, 3}));
    CHECK_FALSE(oracle_is_safe_subset(d, {2}, {0, 1, 3})); // covering 2 avoids 1
    CHECK(oracle_is_safe_subset(d, {2}, {0, 2, 3}));
    CHECK_FALSE(oracle_is_safe_subset(d, {}, {0}));
    CHECK_FALSE(oracle_is_safe_subset(d, {1}, {}));
}

TEST_CASE("subset computation agrees with its oracle") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coin(0, 1);
    auto check_graph = [&](const StDag& g) {
        std::vector<NodeId> c;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (coin(rng)) c.push_back(v);
        SafeSequenceSet fast = maximal_safe_sequences_subset(g, c);
        SafeSequenceSet oracle = oracle_maximal_safe_subset(g, c);
        CHECK(same_sequence_set(fast.sequences, oracle.sequences));
        for (const auto& seq : fast.sequences) CHECK(oracle_is_safe_subset(g, c, seq));
    };
    for (int trial = 0; trial < 200; ++trial) check_graph(random_st_dag(rng, 8));
}

TEST_CASE("subset sequences cannot be extended by any single node") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
        StDag g = random_st_dag(rng, 7);
        std::vector<NodeId> c;
        for (NodeId v = 0; v < g.node_count(); ++v)
            if (coin(rng)) c.push_back(v);
        SafeSequenceSet set = maximal_safe_sequences_subset(g, c);
        for (const auto& seq : set.sequences) CHECK_FALSE(has_safe_supersequence(g, c, seq));
    }
}
