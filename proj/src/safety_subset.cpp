#include "safeseq/safety_subset.hpp"

#include <algorithm>

#include "safeseq/error.hpp"

namespace safeseq {

namespace {

struct TopoSeqLess {
    const StDag& g;
    bool operator()(const std::vector<NodeId>& a, const std::vector<NodeId>& b) const {
        const std::size_t k = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < k; ++i)
            if (a[i] != b[i]) return g.topo_pos[a[i]] < g.topo_pos[b[i]];
        return a.size() < b.size();
    }
};

bool is_subsequence(const std::vector<NodeId>& small, const std::vector<NodeId>& big) {
    std::size_t i = 0;
    for (NodeId x : big)
        if (i < small.size() && small[i] == x) ++i;
    return i == small.size();
}

} // namespace

BlueTree build_blue_tree(const DominatorTree& base, const std::vector<char>& in_set) {
    const std::size_t n = base.parent.size();
    BlueTree blue;
    blue.base = &base;
    blue.in_set = in_set;
    blue.blue_parent.assign(n, kNoNode);
    blue.blue_children.assign(n, 0);

    // nearest[v] = deepest member on the tree path root..v. A preorder sweep
    // (parents before children) computes it in one pass.
    std::vector<NodeId> nearest(n, kNoNode);
    std::vector<NodeId> order(n);
    for (std::size_t v = 0; v < n; ++v) order[v] = static_cast<NodeId>(v);
    std::sort(order.begin(), order.end(), [&base](NodeId a, NodeId b) { return base.pre[a] < base.pre[b]; });
    for (NodeId v : order) {
        NodeId above = v == base.root ? kNoNode : nearest[base.parent[v]];
        if (in_set[v]) {
            blue.blue_parent[v] = above;
            if (above != kNoNode) ++blue.blue_children[above];
            nearest[v] = v;
        } else {
            nearest[v] = above;
        }
    }
    return blue;
}

std::vector<UnivocalBluePath> common_univocal_paths(const BlueTree& s_blue, const BlueTree& t_blue) {
    const std::size_t n = s_blue.in_set.size();
    std::vector<UnivocalBluePath> paths;

    // Start from each blue leaf of the s-forest and climb while the chain
    // stays univocal in both forests. The same nodes appear in reverse in the
    // t-forest, so climbing the s-forest walks down the t-forest: the chain can
    // end at the current top only when that top is a blue t-leaf, and it can
    // grow only through a top with exactly one blue t-child.
    for (std::size_t vi = 0; vi < n; ++vi) {
        NodeId leaf = static_cast<NodeId>(vi);
        if (!s_blue.in_set[leaf] || s_blue.blue_children[leaf] != 0) continue;

        std::vector<NodeId> chain{leaf}; // deepest (s-forest) first while building
        NodeId top = leaf;
        bool complete = false;
        while (true) {
            if (t_blue.blue_children[top] == 0) {
                complete = true;
                break;
            }
            if (t_blue.blue_children[top] != 1) break;
            NodeId p = s_blue.blue_parent[top];
            if (p == kNoNode) break;
            if (s_blue.blue_children[p] != 1) break;
            if (t_blue.blue_parent[p] != top) break; // chains disagree between the forests
            chain.push_back(p);
            top = p;
        }
        if (!complete) continue;
        std::reverse(chain.begin(), chain.end());
        paths.push_back(UnivocalBluePath{std::move(chain)});
    }
    return paths;
}

SafeSequenceSet maximal_safe_sequences_subset(const StDag& g, const std::vector<NodeId>& c_nodes) {
    SafeSequenceSet result;
    if (c_nodes.empty()) return result;

    std::vector<char> in_set(g.node_count(), 0);
    for (NodeId v : c_nodes) {
        require(v < g.node_count(), "subset member out of range");
        in_set[v] = 1;
    }

    DominatorTree s_tree = build_dominator_tree(g, Direction::TowardS);
    DominatorTree t_tree = build_dominator_tree(g, Direction::TowardT);
    BlueTree s_blue = build_blue_tree(s_tree, in_set);
    BlueTree t_blue = build_blue_tree(t_tree, in_set);

    // Unit chains need no special pass here: a contracted chain shows up as a
    // univocal path in both forests and collapses to one anchor below.
    for (const UnivocalBluePath& path : common_univocal_paths(s_blue, t_blue)) {
        NodeId anchor = path.nodes.back(); // deepest in the s-forest
        result.sequences.push_back(extension(s_tree, t_tree, anchor).sequence);
    }
    std::sort(result.sequences.begin(), result.sequences.end(), TopoSeqLess{g});

    result.representation.valid = false;
    return result;
}

bool oracle_is_safe_subset(const StDag& g, const std::vector<NodeId>& c_nodes, const std::vector<NodeId>& seq,
                           std::size_t path_limit) {
    if (seq.empty() || c_nodes.empty()) return false;
    std::vector<std::vector<NodeId>> paths = all_st_paths(g, path_limit);
    for (NodeId u : c_nodes) {
        bool witness = true;
        for (const auto& p : paths) {
            if (std::find(p.begin(), p.end(), u) == p.end()) continue;
            if (!is_subsequence(seq, p)) {
                witness = false;
                break;
            }
        }
        if (witness) return true;
    }
    return false;
}

SafeSequenceSet oracle_maximal_safe_subset(const StDag& g, const std::vector<NodeId>& c_nodes) {
    std::vector<std::vector<NodeId>> all;
    for (NodeId v : c_nodes) {
        std::vector<NodeId> seq = cutnodes_bruteforce(g, g.source, v);
        std::vector<NodeId> down = cutnodes_bruteforce(g, v, g.sink);
        seq.insert(seq.end(), down.begin() + 1, down.end());
        all.push_back(std::move(seq));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());

    SafeSequenceSet result;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j)
            dominated = i != j && all[i].size() < all[j].size() && is_subsequence(all[i], all[j]);
        if (!dominated) result.sequences.push_back(all[i]);
    }
    std::sort(result.sequences.begin(), result.sequences.end(), TopoSeqLess{g});
    return result;
}

} // namespace safeseq
