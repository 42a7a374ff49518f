#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "safeseq/error.hpp"

namespace safeseq {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr ArcId kNoArc = std::numeric_limits<ArcId>::max();

struct Arc {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    double weight = 0.0;
};

// Plain directed multigraph. Arc ids are positions in the arc list and stay
// stable under appends; parallel arcs are allowed and keep distinct ids.
class DiGraph {
  public:
    DiGraph() = default;
    explicit DiGraph(std::size_t node_count) : node_count_(node_count) {}

    NodeId add_node() {
        return static_cast<NodeId>(node_count_++);
    }

    ArcId add_arc(NodeId tail, NodeId head, double weight = 0.0) {
        require(tail < node_count_ && head < node_count_, "arc endpoint out of range");
        arcs_.push_back(Arc{tail, head, weight});
        return static_cast<ArcId>(arcs_.size() - 1);
    }

    std::size_t node_count() const { return node_count_; }
    std::size_t arc_count() const { return arcs_.size(); }
    const Arc& arc(ArcId a) const { return arcs_[a]; }
    Arc& arc(ArcId a) { return arcs_[a]; }
    const std::vector<Arc>& arcs() const { return arcs_; }

    // Optional display names, used by debug dumps only. Empty when unset.
    std::vector<std::string> node_labels;

  private:
    std::size_t node_count_ = 0;
    std::vector<Arc> arcs_;
};

// A validated DAG with a unique source s and sink t where every node lies on
// some s-t path. Carries the indexes the algorithms need: a topological order,
// per-node arc lists and deduplicated neighbor lists (parallel arcs count once
// for adjacency purposes, the arc lists keep them apart).
struct StDag {
    DiGraph graph;
    NodeId source = 0;
    NodeId sink = 0;

    std::vector<NodeId> topo_order;           // topo_order[i] = i-th node
    std::vector<std::uint32_t> topo_pos;      // inverse of topo_order
    std::vector<std::vector<ArcId>> out_arcs; // ascending arc id
    std::vector<std::vector<ArcId>> in_arcs;
    std::vector<std::vector<NodeId>> out_adj; // distinct neighbors, ascending topo position
    std::vector<std::vector<NodeId>> in_adj;

    // Arcs with id >= data_arc_count were appended by normalize_to_st_dag and
    // carry no measured weight; statistics such as weight percentiles skip them.
    ArcId data_arc_count = 0;

    std::size_t node_count() const { return graph.node_count(); }
    std::size_t arc_count() const { return graph.arc_count(); }
    const Arc& arc(ArcId a) const { return graph.arc(a); }
    bool is_data_arc(ArcId a) const { return a < data_arc_count; }
};

// Checks that (g, s, t) is a valid s-t DAG and builds the indexes.
// Throws CycleDetected, UnreachableNode, MultipleSources or MultipleSinks,
// naming an offending node. The single-node graph with s == t is accepted.
StDag validate_st_dag(DiGraph g, NodeId s, NodeId t);

// Adds a fresh source wired to `starts` and a fresh sink wired from `ends`,
// then validates. Empty lists default to all indegree-0 / outdegree-0 nodes.
// The added arcs get weight 0 (or the caller-supplied per-entry weights) and
// ids past data_arc_count.
StDag normalize_to_st_dag(DiGraph g, std::vector<NodeId> starts = {}, std::vector<NodeId> ends = {},
                          const std::vector<double>& start_weights = {},
                          const std::vector<double>& end_weights = {});

// BFS reachability u -> v, optionally pretending a node or an arc is absent.
bool reaches(const StDag& g, NodeId u, NodeId v, NodeId blocked_node = kNoNode, ArcId blocked_arc = kNoArc);

// All s-t paths as node sequences, enumerated in lexicographic order with
// respect to topological positions. Parallel arcs yield one node path.
// Throws PathExplosion once more than `limit` paths exist.
std::vector<std::vector<NodeId>> all_st_paths(const StDag& g, std::size_t limit);

// All s-t paths as arc sequences; parallel arcs are distinct here.
std::vector<std::vector<ArcId>> all_st_arc_paths(const StDag& g, std::size_t limit);

// Default ceiling for oracle-side path enumeration; the SAFESEQ_PATH_LIMIT
// environment variable overrides it for the CLI.
inline constexpr std::size_t kDefaultPathLimit = 100000;

} // namespace safeseq
