#include "safeseq/dominator.hpp"

#include <algorithm>
#include <sstream>

#include "safeseq/error.hpp"

namespace safeseq {

std::vector<NodeId> DominatorTree::root_path(NodeId v) const {
    std::vector<NodeId> path;
    for (NodeId x = v;; x = parent[x]) {
        path.push_back(x);
        if (x == root) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

DominatorTree build_dominator_tree(const StDag& g, Direction direction) {
    const std::size_t n = g.node_count();
    DominatorTree tree;
    tree.direction = direction;
    tree.root = direction == Direction::TowardS ? g.source : g.sink;
    tree.parent.assign(n, kNoNode);
    tree.depth.assign(n, 0);
    tree.parent[tree.root] = tree.root;

    const auto& preds = direction == Direction::TowardS ? g.in_adj : g.out_adj;

    auto lca = [&tree](NodeId a, NodeId b) {
        while (a != b) {
            if (tree.depth[a] < tree.depth[b])
                b = tree.parent[b];
            else
                a = tree.parent[a];
        }
        return a;
    };

    // In a topological sweep all of v's predecessors are placed before v, so
    // their tree LCA is well defined and equals v's immediate dominator.
    for (std::size_t i = 0; i < n; ++i) {
        NodeId v = direction == Direction::TowardS ? g.topo_order[i] : g.topo_order[n - 1 - i];
        if (v == tree.root) continue;
        NodeId idom = kNoNode;
        for (NodeId u : preds[v]) {
            require(tree.parent[u] != kNoNode, "predecessor not yet placed");
            idom = idom == kNoNode ? u : lca(idom, u);
        }
        require(idom != kNoNode, "non-root node without predecessors");
        tree.parent[v] = idom;
        tree.depth[v] = tree.depth[idom] + 1;
    }

    tree.children.assign(n, {});
    for (std::size_t v = 0; v < n; ++v)
        if (static_cast<NodeId>(v) != tree.root) tree.children[tree.parent[v]].push_back(static_cast<NodeId>(v));

    tree.pre.assign(n, 0);
    tree.post.assign(n, 0);
    std::uint32_t clock = 0;
    std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root, 0}};
    tree.pre[tree.root] = clock++;
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < tree.children[v].size()) {
            NodeId c = tree.children[v][next++];
            tree.pre[c] = clock++;
            stack.emplace_back(c, 0);
        } else {
            tree.post[v] = clock++;
            stack.pop_back();
        }
    }
    return tree;
}

NodeId dom_k(const DominatorTree& tree, NodeId v, std::uint64_t k) {
    NodeId x = v;
    for (std::uint64_t i = 0; i < k && x != tree.root; ++i) x = tree.parent[x];
    return x;
}

std::vector<NodeId> cutnodes_bruteforce(const StDag& g, NodeId u, NodeId v) {
    if (!reaches(g, u, v)) fail(ErrorKind::NoPath, "no path from " + std::to_string(u) + " to " + std::to_string(v));
    std::vector<NodeId> cut;
    for (std::size_t x = 0; x < g.node_count(); ++x) {
        NodeId node = static_cast<NodeId>(x);
        if (node == u || node == v) {
            cut.push_back(node);
        } else if (!reaches(g, u, v, node)) {
            cut.push_back(node);
        }
    }
    std::sort(cut.begin(), cut.end(), [&g](NodeId a, NodeId b) { return g.topo_pos[a] < g.topo_pos[b]; });
    return cut;
}

bool is_dominator_by_neighborhood(const StDag& g, NodeId u, Direction direction) {
    const auto& adj = direction == Direction::TowardS ? g.in_adj : g.out_adj;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (adj[v].size() == 1 && adj[v][0] == u) return true;
    return false;
}

Extension extension(const DominatorTree& s_tree, const DominatorTree& t_tree, NodeId anchor) {
    require(s_tree.direction == Direction::TowardS && t_tree.direction == Direction::TowardT,
            "extension wants one tree of each direction");
    Extension ext;
    ext.anchor = anchor;
    ext.sequence = s_tree.root_path(anchor);
    std::vector<NodeId> up = t_tree.root_path(anchor); // sink, ..., anchor
    for (std::size_t i = up.size() - 1; i-- > 0;) ext.sequence.push_back(up[i]);
    return ext;
}

std::string tree_to_text(const DominatorTree& tree) {
    std::ostringstream out;
    std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root, 0}};
    while (!stack.empty()) {
        auto [v, indent] = stack.back();
        stack.pop_back();
        out << std::string(indent * 2, ' ') << v << '\n';
        const auto& kids = tree.children[v];
        for (std::size_t i = kids.size(); i-- > 0;) stack.emplace_back(kids[i], indent + 1);
    }
    return out.str();
}

std::string tree_to_dot(const DominatorTree& tree) {
    std::ostringstream out;
    out << "digraph domtree {\n";
    out << "  label=\"" << (tree.direction == Direction::TowardS ? "toward source" : "toward sink") << "\";\n";
    for (std::size_t v = 0; v < tree.parent.size(); ++v)
        if (static_cast<NodeId>(v) != tree.root) out << "  " << tree.parent[v] << " -> " << v << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace safeseq
