#pragma once

#include <string>
#include <vector>

#include "safeseq/digraph.hpp"

namespace safeseq {

// Stable text renderings of sequence sets. TSV rows are
//   graph_id <tab> seq_index <tab> payload
// with the payload a space-separated node list, or tail:head:arcid triples
// for arc sequences. seq_index is zero-based. The JSON renderings carry the
// same fields under {"graph", "mode", "sequences"}.

std::string node_sequences_tsv(const std::string& graph_id,
                               const std::vector<std::vector<NodeId>>& seqs);

std::string arc_sequences_tsv(const std::string& graph_id, const DiGraph& g,
                              const std::vector<std::vector<ArcId>>& seqs);

std::string node_sequences_json(const std::string& graph_id,
                                const std::vector<std::vector<NodeId>>& seqs);

std::string arc_sequences_json(const std::string& graph_id, const DiGraph& g,
                               const std::vector<std::vector<ArcId>>& seqs);

// Wraps per-graph JSON fragments into one array document.
std::string json_document(const std::vector<std::string>& graph_fragments);

} // namespace safeseq
