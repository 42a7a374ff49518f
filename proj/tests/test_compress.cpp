#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "safeseq/compress.hpp"
#include "testutil.hpp"

using namespace safeseq;
using namespace safeseq::testutil;

namespace {

void check_expand_partition(const CompressionMap& map, std::size_t original_nodes) {
    std::vector<bool> seen(original_nodes, false);
    for (std::size_t c = 0; c < map.expand.size(); ++c) {
        for (NodeId v : map.expand[c]) {
            REQUIRE(v < original_nodes);
            CHECK_FALSE(seen[v]);
            seen[v] = true;
            CHECK(map.forward[v] == static_cast<NodeId>(c));
        }
    }
    CHECK(std::count(seen.begin(), seen.end(), false) == 0);
}

} // namespace

TEST_CASE("a pure path collapses to a single node") {
    StDag p = path_dag(6);
    NodeCompression nc = compress_nodes(p);
    CHECK(nc.dag.node_count() == 1);
    CHECK(nc.dag.arc_count() == 0);
    REQUIRE(nc.map.expand.size() == 1);
    CHECK(nc.map.expand[0] == std::vector<NodeId>({0, 1, 2, 3, 4, 5}));
    check_expand_partition(nc.map, 6);
}

TEST_CASE("a diamond has nothing to contract") {
    StDag d = diamond();
    NodeCompression nc = compress_nodes(d);
    CHECK(nc.dag.node_count() == 4);
    CHECK(nc.dag.arc_count() == 4);
    check_expand_partition(nc.map, 4);
    for (ArcId a = 0; a < nc.dag.arc_count(); ++a) CHECK(nc.map.arc_origin[a] < d.arc_count());
}

TEST_CASE("parallel arcs do not block node contraction") {
    DiGraph g(3);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 1, 2.0);
    g.add_arc(1, 2, 1.0);
    StDag d = validate_st_dag(g, 0, 2);
    NodeCompression nc = compress_nodes(d);
    // 0-1 is a neighbor chain despite the doubled arc, and 1-2 continues it
    CHECK(nc.dag.node_count() == 1);
    CHECK(nc.map.expand[0].size() == 3);
}

TEST_CASE("contraction stops where branching starts") {
    // 0 -> 1 -> 2 -> 3, plus 0 -> 2: only the 2-3 tail contracts
    DiGraph g(4);
    g.add_arc(0, 1, 1.0);
    g.add_arc(1, 2, 1.0);
    g.add_arc(2, 3, 1.0);
    g.add_arc(0, 2, 1.0);
    StDag d = validate_st_dag(g, 0, 3);
    NodeCompression nc = compress_nodes(d);
    CHECK(nc.dag.node_count() == 3);
    check_expand_partition(nc.map, 4);
    bool found_pair = false;
    for (const auto& group : nc.map.expand)
        if (group == std::vector<NodeId>({2, 3})) found_pair = true;
    CHECK(found_pair);
}

TEST_CASE("node contraction is idempotent") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        StDag g = random_st_dag(rng, 8);
        NodeCompression once = compress_nodes(g);
        NodeCompression twice = compress_nodes(once.dag);
        CHECK(twice.dag.node_count() == once.dag.node_count());
        CHECK(twice.dag.arc_count() == once.dag.arc_count());
    }
}

TEST_CASE("arc compression splices unary interior nodes") {
    StDag p = path_dag(4);
    ArcCompression ac = compress_arcs(p);
    CHECK(ac.dag.node_count() == 2);
    CHECK(ac.dag.arc_count() == 1);
    REQUIRE(ac.map.expand.size() == 1);
    CHECK(ac.map.expand[0] == std::vector<ArcId>({0, 1, 2}));
    CHECK(ac.map.node_origin[ac.dag.source] == 0);
    CHECK(ac.map.node_origin[ac.dag.sink] == 3);
}

TEST_CASE("arc compression creates parallel arcs from a diamond") {
    StDag d = diamond();
    ArcCompression ac = compress_arcs(d);
    CHECK(ac.dag.node_count() == 2);
    REQUIRE(ac.dag.arc_count() == 2);
    std::set<std::vector<ArcId>> chains(ac.map.expand.begin(), ac.map.expand.end());
    // each surviving arc stands for one side of the diamond
    for (const auto& chain : chains) CHECK(chain.size() == 2);
    CHECK(chains.size() == 2);
}

TEST_CASE("arc expand lists partition the original arcs") {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        StDag g = random_st_dag(rng, 8);
        if (g.arc_count() == 0) continue;
        ArcCompression ac = compress_arcs(g);
        std::vector<bool> seen(g.arc_count(), false);
        for (const auto& chain : ac.map.expand) {
            REQUIRE(!chain.empty());
            for (std::size_t i = 0; i < chain.size(); ++i) {
                CHECK_FALSE(seen[chain[i]]);
                seen[chain[i]] = true;
                if (i > 0) CHECK(g.arc(chain[i - 1]).head == g.arc(chain[i]).tail);
            }
        }
        CHECK(std::count(seen.begin(), seen.end(), false) == 0);
        // no surviving interior node is unary in both directions
        for (NodeId v = 0; v < ac.dag.node_count(); ++v) {
            if (v == ac.dag.source || v == ac.dag.sink) continue;
            CHECK((ac.dag.in_arcs[v].size() != 1 || ac.dag.out_arcs[v].size() != 1));
        }
    }
}

TEST_CASE("line graph of the diamond") {
    StDag d = diamond();
    LineGraph lg = line_graph(d);
    // 4 arc nodes plus the two abstract endpoints
    CHECK(lg.dag.node_count() == 6);
    CHECK(lg.dag.source == lg.super_source);
    CHECK(lg.dag.sink == lg.super_sink);
    // adjacency: super source feeds the two arcs leaving node 0
    std::set<NodeId> from_s(lg.dag.out_adj[lg.super_source].begin(),
                            lg.dag.out_adj[lg.super_source].end());
    std::set<NodeId> expect_s;
    for (ArcId a = 0; a < d.arc_count(); ++a)
        if (d.arc(a).tail == d.source) expect_s.insert(static_cast<NodeId>(a));
    CHECK(from_s == expect_s);
    // consecutive arcs are linked
    for (ArcId a = 0; a < d.arc_count(); ++a)
        for (ArcId b = 0; b < d.arc_count(); ++b) {
            bool consecutive = d.arc(a).head == d.arc(b).tail;
            const auto& adj = lg.dag.out_adj[a];
            bool linked = std::find(adj.begin(), adj.end(), static_cast<NodeId>(b)) != adj.end();
            CHECK(consecutive == linked);
        }
}

TEST_CASE("line graph path counts match arc path counts") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        StDag g = random_st_dag(rng, 7);
        if (g.arc_count() == 0) continue;
        StDag multi = inject_parallel(rng, g, g.arc_count() + 3);
        LineGraph lg = line_graph(multi);
        auto arc_paths = all_st_arc_paths(multi, kDefaultPathLimit);
        auto line_paths = all_st_paths(lg.dag, kDefaultPathLimit);
        CHECK(arc_paths.size() == line_paths.size());
    }
}
