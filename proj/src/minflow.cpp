#include "safeseq/minflow.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "safeseq/error.hpp"
#include "safeseq/safety.hpp"

namespace safeseq {

namespace {

// Residual-arc max flow scaffolding shared by both phases. Arcs come in
// twin pairs (a, a^1) so the reverse arc of e is e^1.
struct Residual {
    std::size_t n;
    std::vector<std::vector<std::size_t>> adj;
    std::vector<NodeId> to;
    std::vector<std::int64_t> cap;

    explicit Residual(std::size_t n) : n(n), adj(n) {}

    std::size_t add(NodeId u, NodeId v, std::int64_t c) {
        std::size_t id = to.size();
        adj[u].push_back(id);
        to.push_back(v);
        cap.push_back(c);
        adj[v].push_back(id + 1);
        to.push_back(u);
        cap.push_back(0);
        return id;
    }

    // Edmonds-Karp: repeated BFS augmentation along shortest residual paths.
    std::int64_t max_flow(NodeId s, NodeId t) {
        std::int64_t total = 0;
        std::vector<std::size_t> via(n);
        while (true) {
            std::vector<char> seen(n, 0);
            std::deque<NodeId> queue{s};
            seen[s] = 1;
            while (!queue.empty() && !seen[t]) {
                NodeId v = queue.front();
                queue.pop_front();
                for (std::size_t e : adj[v]) {
                    NodeId w = to[e];
                    if (seen[w] || cap[e] <= 0) continue;
                    seen[w] = 1;
                    via[w] = e;
                    queue.push_back(w);
                }
            }
            if (!seen[t]) return total;
            std::int64_t push = kUncapped;
            for (NodeId v = t; v != s; v = to[via[v] ^ 1]) push = std::min(push, cap[via[v]]);
            for (NodeId v = t; v != s; v = to[via[v] ^ 1]) {
                cap[via[v]] -= push;
                cap[via[v] ^ 1] += push;
            }
            total += push;
        }
    }
};

} // namespace

std::int64_t min_flow_with_lower_bounds(FlowNetwork& net) {
    const std::size_t n = net.node_count;
    require(net.source < n && net.sink < n && net.source != net.sink, "bad flow network endpoints");
    for (const FlowArc& a : net.arcs) {
        require(a.lower >= 0, "negative lower bound");
        if (a.lower > a.capacity) fail(ErrorKind::Infeasible, "arc lower bound exceeds its capacity");
    }

    // Phase 1: some feasible flow. Shift every arc to [0, cap-lower], add a
    // circulation arc t->s, and satisfy the lower-bound imbalances from a
    // super source/sink pair.
    const NodeId aux_s = static_cast<NodeId>(n);
    const NodeId aux_t = static_cast<NodeId>(n + 1);
    Residual feas(n + 2);
    std::vector<std::size_t> arc_edge(net.arcs.size());
    std::vector<std::int64_t> imbalance(n, 0);
    std::int64_t demand = 0;
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const FlowArc& a = net.arcs[i];
        arc_edge[i] = feas.add(a.tail, a.head, a.capacity - a.lower);
        imbalance[a.head] += a.lower;
        imbalance[a.tail] -= a.lower;
    }
    std::size_t loop_edge = feas.add(net.sink, net.source, kUncapped);
    for (std::size_t v = 0; v < n; ++v) {
        if (imbalance[v] > 0) {
            feas.add(aux_s, static_cast<NodeId>(v), imbalance[v]);
            demand += imbalance[v];
        } else if (imbalance[v] < 0) {
            feas.add(static_cast<NodeId>(v), aux_t, -imbalance[v]);
        }
    }
    if (feas.max_flow(aux_s, aux_t) != demand)
        fail(ErrorKind::Infeasible, "lower bounds admit no feasible flow");

    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        // used amount = reverse residual of the shifted arc
        net.arcs[i].flow = net.arcs[i].lower + feas.cap[arc_edge[i] ^ 1];
    }
    std::int64_t value = feas.cap[loop_edge ^ 1]; // circulation volume = s-t flow value

    // Phase 2: drain the excess with a max flow from sink to source in the
    // residual of the real network (forward slack = cap - flow, backward
    // slack = flow - lower).
    Residual drain(n);
    std::vector<std::size_t> fwd(net.arcs.size()), bwd(net.arcs.size());
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const FlowArc& a = net.arcs[i];
        fwd[i] = drain.add(a.tail, a.head, a.capacity - a.flow);
        bwd[i] = drain.add(a.head, a.tail, a.flow - a.lower);
    }
    value -= drain.max_flow(net.sink, net.source);
    for (std::size_t i = 0; i < net.arcs.size(); ++i) {
        const FlowArc& a = net.arcs[i];
        std::int64_t delta = (a.capacity - a.flow) - drain.cap[fwd[i]]; // increase pushed through forward twin
        std::int64_t minus = (a.flow - a.lower) - drain.cap[bwd[i]];    // decrease pushed through backward twin
        net.arcs[i].flow += delta - minus;
        require(net.arcs[i].flow >= a.lower && net.arcs[i].flow <= a.capacity, "flow left its bounds");
    }
    return value;
}

std::string network_to_text(const FlowNetwork& net) {
    std::ostringstream out;
    out << "nodes " << net.node_count << " source " << net.source << " sink " << net.sink << '\n';
    for (const FlowArc& a : net.arcs) {
        out << a.tail << " -> " << a.head << "  lower " << a.lower << "  cap ";
        if (a.capacity >= kUncapped)
            out << "inf";
        else
            out << a.capacity;
        out << "  flow " << a.flow << '\n';
    }
    return out.str();
}

namespace {

AntichainSelection antichain_from_flow(const StDag& g, const FlowNetwork& net, std::int64_t value,
                                       const std::vector<std::int64_t>& weights) {
    const std::size_t n = g.node_count();

    // Source side of the residual graph: follow arcs forward while their flow
    // can still shrink, and backward unconditionally (capacity is infinite, so
    // flow can always grow back). Minimality of the flow keeps the sink out.
    std::vector<std::vector<std::pair<NodeId, char>>> adj(n); // (neighbor, needs_slack)
    for (const FlowArc& a : net.arcs) {
        adj[a.tail].push_back({a.head, 1});
        adj[a.head].push_back({a.tail, 0});
    }
    std::vector<char> side(n, 0);
    side[g.source] = 1;
    std::vector<NodeId> stack{g.source};
    std::vector<std::vector<const FlowArc*>> out_by_tail(n);
    for (const FlowArc& a : net.arcs) out_by_tail[a.tail].push_back(&a);
    std::vector<std::vector<const FlowArc*>> in_by_head(n);
    for (const FlowArc& a : net.arcs) in_by_head[a.head].push_back(&a);
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (const FlowArc* a : out_by_tail[v])
            if (!side[a->head] && a->flow > a->lower) {
                side[a->head] = 1;
                stack.push_back(a->head);
            }
        for (const FlowArc* a : in_by_head[v])
            if (!side[a->tail]) {
                side[a->tail] = 1;
                stack.push_back(a->tail);
            }
    }
    require(!side[g.sink], "sink reachable in residual of a minimum flow");

    AntichainSelection sel;
    for (ArcId a = 0; a < net.arcs.size(); ++a) {
        const FlowArc& fa = net.arcs[a];
        if (fa.flow == fa.lower && side[fa.tail] && !side[fa.head]) {
            sel.arcs.push_back(a);
            sel.weight += weights[a];
        }
    }
    require(sel.weight == value, "antichain weight does not match the flow value");

    // The selected arcs must be pairwise unreachable; one forward sweep per
    // selected arc keeps this within O(k m).
    for (ArcId a : sel.arcs) {
        std::vector<char> seen(n, 0);
        std::vector<NodeId> work{g.arc(a).head};
        seen[g.arc(a).head] = 1;
        while (!work.empty()) {
            NodeId v = work.back();
            work.pop_back();
            for (const FlowArc* fa : out_by_tail[v])
                if (!seen[fa->head]) {
                    seen[fa->head] = 1;
                    work.push_back(fa->head);
                }
        }
        for (ArcId b : sel.arcs)
            if (a != b) require(!seen[g.arc(b).tail], "antichain arcs are comparable");
    }
    return sel;
}

} // namespace

AntichainSelection max_weight_arc_antichain(const StDag& g, const std::vector<std::int64_t>& weights) {
    require(weights.size() == g.arc_count(), "one weight per arc expected");
    FlowNetwork net;
    net.node_count = g.node_count();
    net.source = g.source;
    net.sink = g.sink;
    for (ArcId a = 0; a < g.arc_count(); ++a) {
        require(weights[a] >= 0, "antichain weights must be nonnegative");
        net.arcs.push_back(FlowArc{g.arc(a).tail, g.arc(a).head, weights[a], kUncapped, 0});
    }
    std::int64_t value = min_flow_with_lower_bounds(net);
    return antichain_from_flow(g, net, value, weights);
}

std::uint32_t arc_width(const StDag& g) {
    if (g.arc_count() == 0) return 1;
    std::vector<std::int64_t> unit(g.arc_count(), 1);
    FlowNetwork net;
    net.node_count = g.node_count();
    net.source = g.source;
    net.sink = g.sink;
    for (ArcId a = 0; a < g.arc_count(); ++a)
        net.arcs.push_back(FlowArc{g.arc(a).tail, g.arc(a).head, 1, kUncapped, 0});
    std::int64_t value = min_flow_with_lower_bounds(net);
    require(value >= 1, "positive width expected for a nonempty graph");
    return static_cast<std::uint32_t>(value);
}

AntichainSelection select_fixing_sequences(const StDag& g, SafetyMode mode, const std::vector<ArcId>& subset) {
    std::vector<std::int64_t> weights(g.arc_count(), 0);
    std::vector<ArcSequenceRef> refs;

    SafeSequenceSet node_set;
    std::vector<ArcSequence> arc_set;
    if (mode == SafetyMode::Nodes) {
        node_set = maximal_safe_sequences(g);
        refs = longest_safe_sequence_per_arc(g, node_set);
    } else {
        arc_set = mode == SafetyMode::Arcs ? maximal_safe_arc_sequences(g)
                                           : maximal_safe_arc_sequences_subset(g, subset);
        refs = longest_safe_arc_sequence_per_arc(g, arc_set);
    }
    for (ArcId a = 0; a < g.arc_count(); ++a) weights[a] = refs[a].length;

    AntichainSelection sel = max_weight_arc_antichain(g, weights);
    if (mode == SafetyMode::Nodes) {
        sel.set_size = node_set.sequences.size();
        sel.set_total_length = node_set.total_length();
    } else {
        sel.set_size = arc_set.size();
        for (const auto& s : arc_set) sel.set_total_length += s.size();
    }
    for (ArcId a : sel.arcs) {
        if (refs[a].length == 0) continue; // permitted filler arcs carry nothing
        AttachedSequence att;
        att.arc = a;
        att.seq_index = refs[a].seq_index;
        if (mode == SafetyMode::Nodes) {
            att.node_seq = node_set.sequences[att.seq_index];
            for (std::size_t i = 0; i + 1 < att.node_seq.size(); ++i) {
                ArcId forced = kNoArc;
                if (arc_is_forced(g, att.node_seq[i], att.node_seq[i + 1], forced)) att.fix_arcs.push_back(forced);
            }
        } else {
            att.arc_seq = arc_set[att.seq_index];
            att.fix_arcs = att.arc_seq;
        }
        sel.sequences.push_back(std::move(att));
    }

    // Two selected arcs can never ride the same sequence: all arcs pinned by
    // one sequence are mutually reachable along it.
    for (std::size_t i = 0; i < sel.sequences.size(); ++i)
        for (std::size_t j = i + 1; j < sel.sequences.size(); ++j)
            require(sel.sequences[i].seq_index != sel.sequences[j].seq_index,
                    "two antichain arcs share a safe sequence");
    return sel;
}

} // namespace safeseq
