#include "safeseq/safety.hpp"

#include <algorithm>

#include "safeseq/error.hpp"

namespace safeseq {

namespace {

// Lexicographic order on topological positions. Distinct maximal sequences
// always differ at some position, so this is a strict total order for us.
struct TopoSeqLess {
    const StDag& g;
    bool operator()(const std::vector<NodeId>& a, const std::vector<NodeId>& b) const {
        const std::size_t k = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < k; ++i) {
            if (a[i] != b[i]) return g.topo_pos[a[i]] < g.topo_pos[b[i]];
        }
        return a.size() < b.size();
    }
};

std::vector<NodeId> expand_sequence(const CompressionMap& map, const std::vector<NodeId>& compressed_seq) {
    std::vector<NodeId> out;
    for (NodeId c : compressed_seq) out.insert(out.end(), map.expand[c].begin(), map.expand[c].end());
    return out;
}

// True when `small` appears inside `big` in order (not necessarily adjacent).
bool is_subsequence(const std::vector<NodeId>& small, const std::vector<NodeId>& big) {
    std::size_t i = 0;
    for (NodeId x : big) {
        if (i < small.size() && small[i] == x) ++i;
    }
    return i == small.size();
}

// Drops duplicates and everything that is a subsequence of another entry.
std::vector<std::vector<NodeId>> keep_maximal(std::vector<std::vector<NodeId>> seqs) {
    std::sort(seqs.begin(), seqs.end());
    seqs.erase(std::unique(seqs.begin(), seqs.end()), seqs.end());
    std::vector<std::vector<NodeId>> out;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        bool dominated = false;
        // A proper subsequence is strictly shorter; equal-length distinct
        // sequences cannot contain each other.
        for (std::size_t j = 0; j < seqs.size() && !dominated; ++j)
            dominated = i != j && seqs[i].size() < seqs[j].size() && is_subsequence(seqs[i], seqs[j]);
        if (!dominated) out.push_back(seqs[i]);
    }
    return out;
}

} // namespace

SafeSequenceSet maximal_safe_sequences(const StDag& g) {
    SafeSequenceSet result;
    NodeCompression comp = compress_nodes(g);

    DominatorTree s_tree = build_dominator_tree(comp.dag, Direction::TowardS);
    DominatorTree t_tree = build_dominator_tree(comp.dag, Direction::TowardT);

    std::vector<NodeId> common;
    for (NodeId v : comp.dag.topo_order)
        if (s_tree.is_leaf(v) && t_tree.is_leaf(v)) common.push_back(v);

    for (NodeId v : common)
        result.sequences.push_back(expand_sequence(comp.map, extension(s_tree, t_tree, v).sequence));
    std::sort(result.sequences.begin(), result.sequences.end(), TopoSeqLess{g});

    result.representation.valid = true;
    result.representation.s_tree = std::move(s_tree);
    result.representation.t_tree = std::move(t_tree);
    result.representation.common_leaves = std::move(common);
    result.representation.map = std::move(comp.map);
    return result;
}

SafeSequenceSet maximal_safe_sequences_no_domtree(const StDag& g) {
    SafeSequenceSet result;
    NodeCompression comp = compress_nodes(g);

    const StDag& cg = comp.dag;
    for (NodeId v : cg.topo_order) {
        // Skip v if anybody's neighborhood singles it out: such a v dominates a
        // neighbor and cannot be maximal.
        if (is_dominator_by_neighborhood(cg, v, Direction::TowardS)) continue;
        if (is_dominator_by_neighborhood(cg, v, Direction::TowardT)) continue;
        std::vector<NodeId> seq = cutnodes_bruteforce(cg, cg.source, v);
        std::vector<NodeId> down = cutnodes_bruteforce(cg, v, cg.sink);
        seq.insert(seq.end(), down.begin() + 1, down.end());
        result.sequences.push_back(expand_sequence(comp.map, seq));
    }
    std::sort(result.sequences.begin(), result.sequences.end(), TopoSeqLess{g});
    return result;
}

bool oracle_is_safe(const StDag& g, const std::vector<NodeId>& seq, std::size_t path_limit) {
    if (seq.empty()) return false;
    std::vector<std::vector<NodeId>> paths = all_st_paths(g, path_limit);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        bool witness = true;
        for (const auto& p : paths) {
            if (std::find(p.begin(), p.end(), static_cast<NodeId>(u)) == p.end()) continue;
            if (!is_subsequence(seq, p)) {
                witness = false;
                break;
            }
        }
        if (witness) return true;
    }
    return false;
}

SafeSequenceSet oracle_maximal_safe(const StDag& g) {
    std::vector<std::vector<NodeId>> all;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        std::vector<NodeId> seq = cutnodes_bruteforce(g, g.source, static_cast<NodeId>(v));
        std::vector<NodeId> down = cutnodes_bruteforce(g, static_cast<NodeId>(v), g.sink);
        seq.insert(seq.end(), down.begin() + 1, down.end());
        all.push_back(std::move(seq));
    }
    SafeSequenceSet result;
    result.sequences = keep_maximal(std::move(all));
    std::sort(result.sequences.begin(), result.sequences.end(), TopoSeqLess{g});
    return result;
}

bool arc_is_forced(const StDag& g, NodeId u, NodeId v, ArcId& out_arc) {
    ArcId found = kNoArc;
    for (ArcId a : g.out_arcs[u]) {
        if (g.arc(a).head != v) continue;
        if (found != kNoArc) return false; // parallel arcs, neither is pinned down
        found = a;
    }
    if (found == kNoArc) return false;
    if (reaches(g, u, v, kNoNode, found)) return false; // a detour exists
    out_arc = found;
    return true;
}

std::vector<ArcSequenceRef> longest_safe_sequence_per_arc(const StDag& g, const SafeSequenceSet& set) {
    std::vector<ArcSequenceRef> best(g.arc_count());
    for (std::size_t si = 0; si < set.sequences.size(); ++si) {
        const auto& seq = set.sequences[si];
        const auto len = static_cast<std::uint32_t>(seq.size());
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            ArcId a = kNoArc;
            if (!arc_is_forced(g, seq[i], seq[i + 1], a)) continue;
            if (len > best[a].length) best[a] = ArcSequenceRef{len, si};
        }
    }
    return best;
}

std::vector<ArcSequenceRef> longest_safe_sequence_per_arc(const StDag& g) {
    return longest_safe_sequence_per_arc(g, maximal_safe_sequences(g));
}

} // namespace safeseq
