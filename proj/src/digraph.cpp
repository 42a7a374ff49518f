#include "safeseq/digraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace safeseq {

namespace {

// Kahn's algorithm. Returns a topological order or throws CycleDetected
// naming the smallest node id left on a cycle.
std::vector<NodeId> topo_sort(const DiGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> indeg(n, 0);
    std::vector<std::vector<NodeId>> out(n);
    for (const Arc& a : g.arcs()) {
        ++indeg[a.head];
        out[a.tail].push_back(a.head);
    }
    std::deque<NodeId> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(static_cast<NodeId>(v));
    std::vector<NodeId> order;
    order.reserve(n);
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        order.push_back(v);
        for (NodeId w : out[v])
            if (--indeg[w] == 0) queue.push_back(w);
    }
    if (order.size() != n) {
        for (std::size_t v = 0; v < n; ++v)
            if (indeg[v] > 0)
                fail(ErrorKind::CycleDetected, "graph has a cycle through node " + std::to_string(v),
                     static_cast<std::int64_t>(v));
    }
    return order;
}

std::vector<char> forward_reachable(const DiGraph& g, NodeId from) {
    std::vector<std::vector<NodeId>> out(g.node_count());
    for (const Arc& a : g.arcs()) out[a.tail].push_back(a.head);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : out[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

std::vector<char> backward_reachable(const DiGraph& g, NodeId to) {
    std::vector<std::vector<NodeId>> in(g.node_count());
    for (const Arc& a : g.arcs()) in[a.head].push_back(a.tail);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{to};
    seen[to] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : in[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

} // namespace

StDag validate_st_dag(DiGraph g, NodeId s, NodeId t) {
    const std::size_t n = g.node_count();
    require(n > 0, "empty graph");
    require(s < n && t < n, "source or sink id out of range");

    StDag dag;
    dag.topo_order = topo_sort(g);

    // Reachability first: an isolated second source/sink is reported as the
    // unreachable node it is, which gives better messages for normalized input.
    std::vector<char> from_s = forward_reachable(g, s);
    for (std::size_t v = 0; v < n; ++v)
        if (!from_s[v])
            fail(ErrorKind::UnreachableNode, "node " + std::to_string(v) + " is unreachable from the source",
                 static_cast<std::int64_t>(v));
    std::vector<char> to_t = backward_reachable(g, t);
    for (std::size_t v = 0; v < n; ++v)
        if (!to_t[v])
            fail(ErrorKind::UnreachableNode, "node " + std::to_string(v) + " cannot reach the sink",
                 static_cast<std::int64_t>(v));

    std::vector<std::uint32_t> indeg(n, 0), outdeg(n, 0);
    for (const Arc& a : g.arcs()) {
        ++outdeg[a.tail];
        ++indeg[a.head];
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (indeg[v] == 0 && static_cast<NodeId>(v) != s)
            fail(ErrorKind::MultipleSources, "node " + std::to_string(v) + " is a second source",
                 static_cast<std::int64_t>(v));
        if (outdeg[v] == 0 && static_cast<NodeId>(v) != t)
            fail(ErrorKind::MultipleSinks, "node " + std::to_string(v) + " is a second sink",
                 static_cast<std::int64_t>(v));
    }
    if (indeg[s] != 0)
        fail(ErrorKind::MultipleSources, "source node " + std::to_string(s) + " has incoming arcs",
             static_cast<std::int64_t>(s));
    if (outdeg[t] != 0)
        fail(ErrorKind::MultipleSinks, "sink node " + std::to_string(t) + " has outgoing arcs",
             static_cast<std::int64_t>(t));

    dag.graph = std::move(g);
    dag.source = s;
    dag.sink = t;
    dag.data_arc_count = static_cast<ArcId>(dag.graph.arc_count());

    dag.topo_pos.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) dag.topo_pos[dag.topo_order[i]] = static_cast<std::uint32_t>(i);

    dag.out_arcs.assign(n, {});
    dag.in_arcs.assign(n, {});
    for (ArcId a = 0; a < dag.graph.arc_count(); ++a) {
        dag.out_arcs[dag.graph.arc(a).tail].push_back(a);
        dag.in_arcs[dag.graph.arc(a).head].push_back(a);
    }

    dag.out_adj.assign(n, {});
    dag.in_adj.assign(n, {});
    auto topo_less = [&dag](NodeId a, NodeId b) { return dag.topo_pos[a] < dag.topo_pos[b]; };
    for (std::size_t v = 0; v < n; ++v) {
        for (ArcId a : dag.out_arcs[v]) dag.out_adj[v].push_back(dag.graph.arc(a).head);
        for (ArcId a : dag.in_arcs[v]) dag.in_adj[v].push_back(dag.graph.arc(a).tail);
        for (auto* adj : {&dag.out_adj[v], &dag.in_adj[v]}) {
            std::sort(adj->begin(), adj->end(), topo_less);
            adj->erase(std::unique(adj->begin(), adj->end()), adj->end());
        }
    }
    return dag;
}

StDag normalize_to_st_dag(DiGraph g, std::vector<NodeId> starts, std::vector<NodeId> ends,
                          const std::vector<double>& start_weights, const std::vector<double>& end_weights) {
    topo_sort(g); // report cycles before touching the structure
    const std::size_t n = g.node_count();
    require(n > 0, "empty graph");
    if (starts.empty() || ends.empty()) {
        std::vector<std::uint32_t> indeg(n, 0), outdeg(n, 0);
        for (const Arc& a : g.arcs()) {
            ++outdeg[a.tail];
            ++indeg[a.head];
        }
        if (starts.empty())
            for (std::size_t v = 0; v < n; ++v)
                if (indeg[v] == 0) starts.push_back(static_cast<NodeId>(v));
        if (ends.empty())
            for (std::size_t v = 0; v < n; ++v)
                if (outdeg[v] == 0) ends.push_back(static_cast<NodeId>(v));
    }
    require(!start_weights.empty() ? start_weights.size() == starts.size() : true,
            "start weight list does not match starts");
    require(!end_weights.empty() ? end_weights.size() == ends.size() : true, "end weight list does not match ends");

    const ArcId data_arcs = static_cast<ArcId>(g.arc_count());
    NodeId s = g.add_node();
    NodeId t = g.add_node();
    for (std::size_t i = 0; i < starts.size(); ++i)
        g.add_arc(s, starts[i], start_weights.empty() ? 0.0 : start_weights[i]);
    for (std::size_t i = 0; i < ends.size(); ++i)
        g.add_arc(ends[i], t, end_weights.empty() ? 0.0 : end_weights[i]);

    StDag dag = validate_st_dag(std::move(g), s, t);
    dag.data_arc_count = data_arcs;
    return dag;
}

bool reaches(const StDag& g, NodeId u, NodeId v, NodeId blocked_node, ArcId blocked_arc) {
    if (u == blocked_node || v == blocked_node) return false;
    if (u == v) return true;
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeId> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
        NodeId x = stack.back();
        stack.pop_back();
        for (ArcId a : g.out_arcs[x]) {
            if (a == blocked_arc) continue;
            NodeId y = g.arc(a).head;
            if (y == blocked_node || seen[y]) continue;
            if (y == v) return true;
            seen[y] = 1;
            stack.push_back(y);
        }
    }
    return false;
}

std::vector<std::vector<NodeId>> all_st_paths(const StDag& g, std::size_t limit) {
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> cur;
    std::function<void(NodeId)> walk = [&](NodeId v) {
        cur.push_back(v);
        if (v == g.sink) {
            if (paths.size() >= limit)
                fail(ErrorKind::PathExplosion,
                     "more than " + std::to_string(limit) + " source-to-sink paths");
            paths.push_back(cur);
        } else {
            for (NodeId w : g.out_adj[v]) walk(w); // out_adj is topo-sorted and deduplicated
        }
        cur.pop_back();
    };
    walk(g.source);
    return paths;
}

std::vector<std::vector<ArcId>> all_st_arc_paths(const StDag& g, std::size_t limit) {
    std::vector<std::vector<ArcId>> paths;
    if (g.source == g.sink) return paths; // single-node graph has no arc paths
    std::vector<ArcId> cur;

    // Visit out-arcs ordered by the head's topological position, then arc id,
    // so the enumeration order is reproducible.
    std::vector<std::vector<ArcId>> ordered(g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        ordered[v] = g.out_arcs[v];
        std::sort(ordered[v].begin(), ordered[v].end(), [&g](ArcId a, ArcId b) {
            auto ka = std::make_pair(g.topo_pos[g.arc(a).head], a);
            auto kb = std::make_pair(g.topo_pos[g.arc(b).head], b);
            return ka < kb;
        });
    }

    std::function<void(NodeId)> walk = [&](NodeId v) {
        if (v == g.sink) {
            if (paths.size() >= limit)
                fail(ErrorKind::PathExplosion,
                     "more than " + std::to_string(limit) + " source-to-sink paths");
            paths.push_back(cur);
            return;
        }
        for (ArcId a : ordered[v]) {
            cur.push_back(a);
            walk(g.arc(a).head);
            cur.pop_back();
        }
    };
    walk(g.source);
    return paths;
}

} // namespace safeseq
