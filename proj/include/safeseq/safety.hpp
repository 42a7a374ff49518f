#pragma once

#include <vector>

#include "safeseq/compress.hpp"
#include "safeseq/digraph.hpp"
#include "safeseq/dominator.hpp"

namespace safeseq {

// Compact certificate for the full answer: both dominator trees of the
// contracted graph plus the nodes that are leaves in both. Together with the
// contraction map this determines every maximal sequence without listing them.
struct SafetyRepresentation {
    bool valid = false;
    DominatorTree s_tree, t_tree; // trees of the contracted graph
    std::vector<NodeId> common_leaves;
    CompressionMap map;
};

struct SafeSequenceSet {
    std::vector<std::vector<NodeId>> sequences; // node ids of the input graph
    SafetyRepresentation representation;

    std::size_t total_length() const {
        std::size_t o = 0;
        for (const auto& s : sequences) o += s.size();
        return o;
    }
};

// All maximal safe sequences of g: node sequences that appear, in order, inside
// some path of every path cover, and that no longer such sequence contains.
// Contracts unit chains, builds both dominator trees, and emits the extension
// of every node that is a leaf in both trees. Output is deduplicated by
// construction, sorted by topological position of the first differing node,
// and never has more entries than g has nodes.
SafeSequenceSet maximal_safe_sequences(const StDag& g);

// Same answer without dominator trees: picks the nodes whose in/out
// neighborhood is nobody's singleton and grows each extension with the
// brute-force cut-node search. Quadratic; exists as an independent check.
SafeSequenceSet maximal_safe_sequences_no_domtree(const StDag& g);

// Path-enumeration oracle: X is safe iff some node u exists such that every
// s-t path through u contains X as a subsequence.
bool oracle_is_safe(const StDag& g, const std::vector<NodeId>& seq, std::size_t path_limit = kDefaultPathLimit);

// Oracle for the full maximal set: extensions of every node via brute-force
// cut nodes, duplicates and dominated subsequences removed.
SafeSequenceSet oracle_maximal_safe(const StDag& g);

// For every arc, the length of the longest maximal safe sequence that walks
// the arc, i.e. has tail and head adjacent and no detour around the arc exists
// (otherwise a cover path could realize the sequence without using it).
// seq_index points into `set.sequences`; ties keep the earliest sequence.
struct ArcSequenceRef {
    std::uint32_t length = 0;
    std::size_t seq_index = static_cast<std::size_t>(-1);
};

std::vector<ArcSequenceRef> longest_safe_sequence_per_arc(const StDag& g, const SafeSequenceSet& set);
std::vector<ArcSequenceRef> longest_safe_sequence_per_arc(const StDag& g);

// True when exactly one u->v arc exists and removing it leaves no other u-v
// route; only then does a sequence with u,v adjacent pin down the arc.
bool arc_is_forced(const StDag& g, NodeId u, NodeId v, ArcId& out_arc);

} // namespace safeseq
