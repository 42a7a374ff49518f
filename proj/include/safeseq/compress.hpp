#pragma once

#include <vector>

#include "safeseq/digraph.hpp"

namespace safeseq {

// Node contraction bookkeeping. `forward` maps an original node to the node
// that absorbed it; `expand` lists, per contracted node, the original nodes it
// stands for, ordered along the contracted chain. The expand lists partition
// the original node set. `arc_origin` maps every surviving arc back to the
// original arc it came from.
struct CompressionMap {
    std::vector<NodeId> forward;
    std::vector<std::vector<NodeId>> expand;
    std::vector<ArcId> arc_origin;
};

struct NodeCompression {
    StDag dag;
    CompressionMap map;
};

// Contracts every maximal chain of nodes linked by arcs uv where v is u's only
// out-neighbor and u is v's only in-neighbor (neighbors as sets, so parallel
// arcs do not block contraction; paths cannot tell parallel arcs apart anyway).
// Linear time. The result has no contractible arc left, and applying it twice
// changes nothing (up to relabeling).
NodeCompression compress_nodes(const StDag& g);

// Arc contraction bookkeeping: per surviving arc, the ordered original arcs of
// the chain it replaces. The expand lists partition the original arc set.
struct ArcCompressionMap {
    std::vector<std::vector<ArcId>> expand;
    std::vector<NodeId> node_origin; // per surviving node, its original id
};

struct ArcCompression {
    StDag dag;
    ArcCompressionMap map;
};

// Removes every internal node with exactly one incoming and one outgoing arc
// (arc counts, not neighbor counts) by splicing its two arcs together. This can
// create parallel arcs, which is the point: they represent genuinely distinct
// routes. No node of the result has both arc-indegree and arc-outdegree 1.
ArcCompression compress_arcs(const StDag& g);

// Line graph of g augmented with an abstract super-source adjacent to the arcs
// leaving g's source and an abstract super-sink reached from the arcs entering
// g's sink. Line node a < g.arc_count() stands for the arc with that id.
// Requires at least one arc.
struct LineGraph {
    StDag dag;
    NodeId super_source = kNoNode;
    NodeId super_sink = kNoNode;
};

LineGraph line_graph(const StDag& g);

} // namespace safeseq
