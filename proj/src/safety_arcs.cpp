#include "safeseq/safety_arcs.hpp"

#include <algorithm>

#include "safeseq/compress.hpp"
#include "safeseq/error.hpp"
#include "safeseq/safety_subset.hpp"

namespace safeseq {

namespace {

// Orders arc sequences by the topological positions of the arcs they walk.
struct ArcSeqLess {
    const StDag& g;
    bool operator()(const ArcSequence& a, const ArcSequence& b) const {
        const std::size_t k = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < k; ++i) {
            if (a[i] == b[i]) continue;
            auto ka = std::make_tuple(g.topo_pos[g.arc(a[i]).tail], g.topo_pos[g.arc(a[i]).head], a[i]);
            auto kb = std::make_tuple(g.topo_pos[g.arc(b[i]).tail], g.topo_pos[g.arc(b[i]).head], b[i]);
            return ka < kb;
        }
        return a.size() < b.size();
    }
};

bool is_subsequence(const ArcSequence& small, const ArcSequence& big) {
    std::size_t i = 0;
    for (ArcId x : big)
        if (i < small.size() && small[i] == x) ++i;
    return i == small.size();
}

// Line node ids below the arc count are arcs; the two abstract endpoints sit
// at the end and bracket every sequence the node machinery returns.
ArcSequence strip_endpoints(const std::vector<NodeId>& line_seq, std::size_t arc_count) {
    ArcSequence out;
    for (NodeId v : line_seq)
        if (v < arc_count) out.push_back(static_cast<ArcId>(v));
    require(out.size() + 2 == line_seq.size(), "line sequence not bracketed by the abstract endpoints");
    return out;
}

// Arcs that every u-v walk must use, in walk order, found by deleting each
// candidate arc and rechecking reachability.
std::vector<ArcId> bridges_bruteforce(const StDag& g, NodeId u, NodeId v) {
    std::vector<ArcId> out;
    if (u == v) return out;
    require(reaches(g, u, v), "bridge query without a connecting path");
    for (ArcId a = 0; a < g.arc_count(); ++a)
        if (!reaches(g, u, v, kNoNode, a)) out.push_back(a);
    std::sort(out.begin(), out.end(),
              [&g](ArcId a, ArcId b) { return g.topo_pos[g.arc(a).tail] < g.topo_pos[g.arc(b).tail]; });
    return out;
}

} // namespace

std::vector<ArcSequence> maximal_safe_arc_sequences(const StDag& g) {
    std::vector<ArcSequence> result;
    if (g.arc_count() == 0) return result;

    ArcCompression comp = compress_arcs(g);
    LineGraph line = line_graph(comp.dag);
    SafeSequenceSet line_seqs = maximal_safe_sequences(line.dag);

    for (const auto& line_seq : line_seqs.sequences) {
        ArcSequence compressed = strip_endpoints(line_seq, comp.dag.arc_count());
        ArcSequence expanded;
        for (ArcId a : compressed)
            expanded.insert(expanded.end(), comp.map.expand[a].begin(), comp.map.expand[a].end());
        result.push_back(std::move(expanded));
    }
    std::sort(result.begin(), result.end(), ArcSeqLess{g});
    return result;
}

bool is_arc_dominator(const StDag& g, ArcId a, Direction direction) {
    if (direction == Direction::TowardS) {
        NodeId v = g.arc(a).head;
        return !g.out_arcs[v].empty() && g.in_arcs[v].size() == 1;
    }
    NodeId u = g.arc(a).tail;
    return !g.in_arcs[u].empty() && g.out_arcs[u].size() == 1;
}

std::vector<ArcSequence> oracle_maximal_safe_arcs(const StDag& g) {
    std::vector<ArcSequence> all;
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        ArcSequence seq = bridges_bruteforce(g, g.source, g.arc(a).tail);
        seq.push_back(a);
        ArcSequence down = bridges_bruteforce(g, g.arc(a).head, g.sink);
        seq.insert(seq.end(), down.begin(), down.end());
        all.push_back(std::move(seq));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    std::vector<ArcSequence> result;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j)
            dominated = i != j && all[i].size() < all[j].size() && is_subsequence(all[i], all[j]);
        if (!dominated) result.push_back(all[i]);
    }
    std::sort(result.begin(), result.end(), ArcSeqLess{g});
    return result;
}

bool oracle_is_safe_arcs(const StDag& g, const ArcSequence& seq, const std::vector<ArcId>& c_arcs,
                         std::size_t path_limit) {
    if (seq.empty()) return false;
    std::vector<std::vector<ArcId>> paths = all_st_arc_paths(g, path_limit);
    std::vector<ArcId> witnesses = c_arcs;
    if (witnesses.empty())
        for (ArcId a = 0; a < g.arc_count(); ++a) witnesses.push_back(a);
    for (ArcId w : witnesses) {
        bool ok = true;
        for (const auto& p : paths) {
            if (std::find(p.begin(), p.end(), w) == p.end()) continue;
            if (!is_subsequence(seq, p)) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

std::vector<ArcSequence> maximal_safe_arc_sequences_subset(const StDag& g, const std::vector<ArcId>& c_arcs) {
    std::vector<ArcSequence> result;
    if (c_arcs.empty() || g.arc_count() == 0) return result;

    // No arc splicing here: the univocal-path machinery inside the subset
    // search absorbs unit chains on its own.
    LineGraph line = line_graph(g);
    std::vector<NodeId> c_line;
    for (ArcId a : c_arcs) {
        require(a < g.arc_count(), "subset arc out of range");
        c_line.push_back(static_cast<NodeId>(a));
    }
    SafeSequenceSet line_seqs = maximal_safe_sequences_subset(line.dag, c_line);
    for (const auto& line_seq : line_seqs.sequences)
        result.push_back(strip_endpoints(line_seq, g.arc_count()));
    std::sort(result.begin(), result.end(), ArcSeqLess{g});
    return result;
}

std::vector<ArcSequenceRef> longest_safe_arc_sequence_per_arc(const StDag& g, const std::vector<ArcSequence>& seqs) {
    std::vector<ArcSequenceRef> best(g.arc_count());
    for (std::size_t si = 0; si < seqs.size(); ++si) {
        const auto len = static_cast<std::uint32_t>(seqs[si].size());
        for (ArcId a : seqs[si])
            if (len > best[a].length) best[a] = ArcSequenceRef{len, si};
    }
    return best;
}

} // namespace safeseq
