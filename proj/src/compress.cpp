#include "safeseq/compress.hpp"

#include <algorithm>

#include "safeseq/error.hpp"

namespace safeseq {

NodeCompression compress_nodes(const StDag& g) {
    const std::size_t n = g.node_count();

    // merge_next[u] = v when the pair (u, v) must collapse: v is u's sole
    // out-neighbor and u is v's sole in-neighbor. Each node gets at most one
    // merge partner on each side, so these pairs chain into disjoint paths.
    std::vector<NodeId> merge_next(n, kNoNode), merge_prev(n, kNoNode);
    for (std::size_t u = 0; u < n; ++u) {
        if (g.out_adj[u].size() != 1) continue;
        NodeId v = g.out_adj[u][0];
        if (g.in_adj[v].size() != 1) continue;
        merge_next[u] = v;
        merge_prev[v] = static_cast<NodeId>(u);
    }

    CompressionMap map;
    map.forward.assign(n, kNoNode);
    for (NodeId v : g.topo_order) { // chain heads in topological order keeps ids topological
        if (merge_prev[v] != kNoNode) continue;
        NodeId group = static_cast<NodeId>(map.expand.size());
        map.expand.emplace_back();
        for (NodeId x = v; x != kNoNode; x = merge_next[x]) {
            map.forward[x] = group;
            map.expand.back().push_back(x);
        }
    }

    DiGraph cg(map.expand.size());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        NodeId ct = map.forward[g.arc(a).tail];
        NodeId ch = map.forward[g.arc(a).head];
        if (ct == ch) continue; // interior of a contracted chain
        cg.add_arc(ct, ch, g.arc(a).weight);
        map.arc_origin.push_back(a);
    }

    NodeCompression result;
    result.dag = validate_st_dag(std::move(cg), map.forward[g.source], map.forward[g.sink]);
    result.map = std::move(map);
    return result;
}

ArcCompression compress_arcs(const StDag& g) {
    const std::size_t n = g.node_count();

    std::vector<char> suppressed(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        suppressed[v] = g.in_arcs[v].size() == 1 && g.out_arcs[v].size() == 1;

    ArcCompressionMap map;
    std::vector<NodeId> forward(n, kNoNode);
    for (NodeId v : g.topo_order) {
        if (suppressed[v]) continue;
        forward[v] = static_cast<NodeId>(map.node_origin.size());
        map.node_origin.push_back(v);
    }
    require(!map.node_origin.empty(), "arc compression erased every node");

    DiGraph cg(map.node_origin.size());
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        if (suppressed[g.arc(a).tail]) continue; // consumed as chain interior below
        std::vector<ArcId> chain{a};
        NodeId end = g.arc(a).head;
        while (suppressed[end]) {
            ArcId next = g.out_arcs[end][0];
            chain.push_back(next);
            end = g.arc(next).head;
        }
        cg.add_arc(forward[g.arc(a).tail], forward[end], g.arc(a).weight);
        map.expand.push_back(std::move(chain));
    }

    ArcCompression result;
    result.dag = validate_st_dag(std::move(cg), forward[g.source], forward[g.sink]);
    result.map = std::move(map);
    return result;
}

LineGraph line_graph(const StDag& g) {
    const std::size_t m = g.arc_count();
    require(m > 0, "line graph needs at least one arc");

    DiGraph lg(m + 2);
    const NodeId super_source = static_cast<NodeId>(m);
    const NodeId super_sink = static_cast<NodeId>(m + 1);

    // One line arc per two-arc path of g; iterating middle nodes in topological
    // order keeps the arc list deterministic.
    for (NodeId v : g.topo_order) {
        for (ArcId a : g.in_arcs[v])
            for (ArcId b : g.out_arcs[v]) lg.add_arc(a, b, 0.0);
    }
    for (ArcId a : g.out_arcs[g.source]) lg.add_arc(super_source, a, 0.0);
    for (ArcId a : g.in_arcs[g.sink]) lg.add_arc(a, super_sink, 0.0);

    LineGraph result;
    result.dag = validate_st_dag(std::move(lg), super_source, super_sink);
    result.super_source = super_source;
    result.super_sink = super_sink;
    return result;
}

} // namespace safeseq
