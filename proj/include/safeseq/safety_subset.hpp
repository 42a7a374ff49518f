#pragma once

#include <vector>

#include "safeseq/digraph.hpp"
#include "safeseq/dominator.hpp"
#include "safeseq/safety.hpp"

namespace safeseq {

// Dominance restricted to a node subset: every member's blue parent is its
// nearest strict tree ancestor that is also a member (kNoNode when none).
// Members with no blue parent are the roots of the blue forest.
struct BlueTree {
    const DominatorTree* base = nullptr;
    std::vector<char> in_set;
    std::vector<NodeId> blue_parent;            // kNoNode outside the set / for blue roots
    std::vector<std::uint32_t> blue_children;   // count, members only
};

BlueTree build_blue_tree(const DominatorTree& base, const std::vector<char>& in_set);

// A chain of members that is univocal in both blue forests: walking shallow to
// deep in the s-forest, every node but the last has exactly one blue child
// there, and the same nodes read deepest-first form such a chain in the
// t-forest. `nodes` is stored in s-forest order (shallowest first).
struct UnivocalBluePath {
    std::vector<NodeId> nodes;
};

// The jointly maximal univocal paths whose deepest s-forest node and deepest
// t-forest node have no blue descendants. Their node sets are disjoint.
std::vector<UnivocalBluePath> common_univocal_paths(const BlueTree& s_blue, const BlueTree& t_blue);

// Maximal safe sequences for path covers that only need to cover C.
// C is taken literally; an empty C yields an empty answer. With C = all nodes
// this agrees with maximal_safe_sequences.
SafeSequenceSet maximal_safe_sequences_subset(const StDag& g, const std::vector<NodeId>& c_nodes);

// Oracle: X is safe for C-covers iff some u in C exists such that every s-t
// path through u contains X as a subsequence.
bool oracle_is_safe_subset(const StDag& g, const std::vector<NodeId>& c_nodes, const std::vector<NodeId>& seq,
                           std::size_t path_limit = kDefaultPathLimit);

// Oracle for the full answer: extensions of every member via brute-force cut
// nodes, reduced to the maximal ones.
SafeSequenceSet oracle_maximal_safe_subset(const StDag& g, const std::vector<NodeId>& c_nodes);

} // namespace safeseq
