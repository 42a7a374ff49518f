#pragma once

#include <vector>

#include "safeseq/digraph.hpp"
#include "safeseq/dominator.hpp"
#include "safeseq/safety.hpp"

namespace safeseq {

// An arc sequence over the input graph: ordered so each arc's head reaches the
// next arc's tail. It does not need to span source to sink, only to sit inside
// some path of every cover. Parallel arcs are distinct members; identity is by
// arc id.
using ArcSequence = std::vector<ArcId>;

// All maximal safe arc sequences: arc chains that appear, in order, inside some
// path of every cover of all arcs. Works by splicing unit chains into single
// arcs, taking the augmented line graph, and running the node machinery there;
// the abstract endpoints are stripped and chain arcs expanded back.
std::vector<ArcSequence> maximal_safe_arc_sequences(const StDag& g);

// Degree test for "arc uv dominates some arc": toward s it needs v to have
// outgoing arcs and exactly one incoming; toward t, u needs incoming arcs and
// exactly one outgoing. Counts arcs, not neighbors, so parallels matter.
bool is_arc_dominator(const StDag& g, ArcId a, Direction direction);

// Reference implementation via bridge arcs: the extension of arc xy is every
// arc that all source-to-x paths need, then xy, then every arc all y-to-sink
// paths need; non-maximal extensions are dropped.
std::vector<ArcSequence> oracle_maximal_safe_arcs(const StDag& g);

// Path-enumeration check used by tests: X is safe for covers of `c_arcs`
// (all arcs when empty) iff some member arc forces X into every path using it.
bool oracle_is_safe_arcs(const StDag& g, const ArcSequence& seq, const std::vector<ArcId>& c_arcs = {},
                         std::size_t path_limit = kDefaultPathLimit);

// Maximal safe arc sequences when only the arcs in `c_arcs` must be covered.
// Runs the subset machinery over the augmented line graph of g.
std::vector<ArcSequence> maximal_safe_arc_sequences_subset(const StDag& g, const std::vector<ArcId>& c_arcs);

// Per arc, the length of the longest sequence in `seqs` containing it
// (ties keep the earliest sequence; absent arcs stay at length 0).
std::vector<ArcSequenceRef> longest_safe_arc_sequence_per_arc(const StDag& g, const std::vector<ArcSequence>& seqs);

} // namespace safeseq
