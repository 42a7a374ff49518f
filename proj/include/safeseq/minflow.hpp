#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "safeseq/digraph.hpp"
#include "safeseq/safety_arcs.hpp"

namespace safeseq {

inline constexpr std::int64_t kUncapped = std::numeric_limits<std::int64_t>::max() / 4;

struct FlowArc {
    NodeId tail = kNoNode;
    NodeId head = kNoNode;
    std::int64_t lower = 0;
    std::int64_t capacity = kUncapped;
    std::int64_t flow = 0;
};

struct FlowNetwork {
    std::size_t node_count = 0;
    std::vector<FlowArc> arcs;
    NodeId source = kNoNode;
    NodeId sink = kNoNode;
};

// Minimum feasible s-t flow value subject to per-arc lower bounds and
// capacities, all integer. A feasible flow is found with the usual
// super-source/super-sink transformation, then reduced by a maximum flow from
// sink to source in the residual network (Edmonds-Karp in both phases).
// Throws Infeasible when no flow meets the bounds. Fills `flow` in `arcs`.
std::int64_t min_flow_with_lower_bounds(FlowNetwork& net);

// Debug dump, one arc per line with bounds and flow.
std::string network_to_text(const FlowNetwork& net);

// One antichain arc plus the safe sequence riding on it. `fix_arcs` is what a
// model may pin for the owning path: for arc sequences the sequence itself,
// for node sequences only the forced arcs between adjacent elements.
struct AttachedSequence {
    ArcId arc = kNoArc;
    std::size_t seq_index = static_cast<std::size_t>(-1);
    std::vector<NodeId> node_seq; // node-mode payload (empty in arc modes)
    ArcSequence arc_seq;          // arc-mode payload (empty in node mode)
    std::vector<ArcId> fix_arcs;
};

struct AntichainSelection {
    std::vector<ArcId> arcs; // pairwise unreachable
    std::int64_t weight = 0;
    std::vector<AttachedSequence> sequences; // one per positive-weight arc
    std::size_t set_size = 0;         // maximal sequences the safety pass found
    std::size_t set_total_length = 0; // summed over the whole set
};

// Heaviest set of pairwise unreachable arcs under nonnegative integer weights.
// Equals the minimum flow with the weights as lower bounds; the arcs are read
// off the final residual graph (tight arcs crossing the source side).
AntichainSelection max_weight_arc_antichain(const StDag& g, const std::vector<std::int64_t>& weights);

// Minimum number of paths needed to cover every arc: the same minimum flow
// with all lower bounds 1. At least 1 even for the degenerate arcless graph.
std::uint32_t arc_width(const StDag& g);

enum class SafetyMode { Nodes, Arcs, ArcSubset };

// Weights every arc by the longest safe sequence that pins it, picks a maximum
// weight antichain, and attaches that sequence to each positive-weight arc
// selected. Distinct selected arcs always carry distinct sequences, and no s-t
// path can contain two of them. `subset` feeds the ArcSubset mode.
AntichainSelection select_fixing_sequences(const StDag& g, SafetyMode mode, const std::vector<ArcId>& subset = {});

} // namespace safeseq
