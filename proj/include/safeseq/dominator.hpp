#pragma once

#include <string>
#include <vector>

#include "safeseq/digraph.hpp"

namespace safeseq {

// TowardS: u dominates v when every source-to-v path passes u.
// TowardT: u dominates v when every v-to-sink path passes u.
enum class Direction { TowardS, TowardT };

struct DominatorTree {
    Direction direction = Direction::TowardS;
    NodeId root = kNoNode;
    std::vector<NodeId> parent; // immediate dominator; parent[root] == root
    std::vector<std::uint32_t> depth;
    std::vector<std::vector<NodeId>> children;
    std::vector<std::uint32_t> pre, post; // DFS intervals for O(1) ancestor tests

    // Ancestor in the non-strict sense: every node is its own ancestor.
    bool is_ancestor(NodeId u, NodeId v) const { return pre[u] <= pre[v] && post[v] <= post[u]; }
    bool is_strict_ancestor(NodeId u, NodeId v) const { return u != v && is_ancestor(u, v); }
    bool is_leaf(NodeId v) const { return children[v].empty(); }

    // Path root, ..., v along tree arcs.
    std::vector<NodeId> root_path(NodeId v) const;
};

// Builds the dominator tree in one sweep over a topological order: the
// immediate dominator of v is the lowest common ancestor, in the tree built so
// far, of v's (distinct) in-neighbors. The TowardT tree is the same procedure
// on the arc-reversed graph rooted at the sink.
DominatorTree build_dominator_tree(const StDag& g, Direction direction);

// k-th strict ancestor of v, or the root when the walk runs out.
NodeId dom_k(const DominatorTree& tree, NodeId v, std::uint64_t k);

// Reference implementation: the nodes every u-v path must pass, found by
// deleting each candidate and rechecking reachability. Includes u and v,
// ordered topologically. Throws NoPath when v is not reachable from u.
std::vector<NodeId> cutnodes_bruteforce(const StDag& g, NodeId u, NodeId v);

// Degree-based dominator test that needs no tree: u dominates some other node
// toward s exactly when some node's in-neighborhood is {u} (toward t: some
// node's out-neighborhood is {u}).
bool is_dominator_by_neighborhood(const StDag& g, NodeId u, Direction direction);

// The walk from the source down to `anchor` in the s-tree, followed by the
// walk from `anchor` up to the sink in the t-tree, anchor listed once.
struct Extension {
    NodeId anchor = kNoNode;
    std::vector<NodeId> sequence;
};

Extension extension(const DominatorTree& s_tree, const DominatorTree& t_tree, NodeId anchor);

// Debug renderings.
std::string tree_to_text(const DominatorTree& tree);
std::string tree_to_dot(const DominatorTree& tree);

} // namespace safeseq
