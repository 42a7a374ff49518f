#include "doctest.h"

#include <algorithm>
#include <random>

#include "safeseq/safety.hpp"
#include "testutil.hpp"

using namespace safeseq;
using namespace safeseq::testutil;

TEST_CASE("a path graph yields one sequence, the path itself") {
    StDag p = path_dag(5);
    SafeSequenceSet set = maximal_safe_sequences(p);
    REQUIRE(set.sequences.size() == 1);
    CHECK(set.sequences[0] == std::vector<NodeId>({0, 1, 2, 3, 4}));
    CHECK(set.total_length() == 5);
    CHECK(set.representation.valid);
}

TEST_CASE("the diamond yields one sequence per branch node") {
    StDag d = diamond();
    SafeSequenceSet set = maximal_safe_sequences(d);
    REQUIRE(set.sequences.size() == 2);
    CHECK(set.sequences[0] == std::vector<NodeId>({0, 1, 3}));
    CHECK(set.sequences[1] == std::vector<NodeId>({0, 2, 3}));
}

TEST_CASE("a single node graph yields the singleton sequence") {
    DiGraph g(1);
    StDag d = validate_st_dag(g, 0, 0);
    SafeSequenceSet set = maximal_safe_sequences(d);
    REQUIRE(set.sequences.size() == 1);
    CHECK(set.sequences[0] == std::vector<NodeId>{0});
}

TEST_CASE("oracle recognizes safe and unsafe sequences on the diamond") {
    StDag d = diamond();
    CHECK(oracle_is_safe(d, {0, 1, 3}));
    CHECK(oracle_is_safe(d, {0, 2, 3}));
    CHECK(oracle_is_safe(d, {1}));
    CHECK(oracle_is_safe(d, {0, 3}));
    CHECK_FALSE(oracle_is_safe(d, {1, 2}));      // no path holds both branches
    CHECK_FALSE(oracle_is_safe(d, {3, 0}));      // wrong order
    CHECK_FALSE(oracle_is_safe(d, {}));          // empty claims nothing
}

TEST_CASE("safe sequences survive paths through their anchor only") {
    // two nested diamonds sharing the middle: sequences must thread the shared nodes
    DiGraph g(6);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 2, 1.0);
    g.add_arc(1, 3, 1.0);
    g.add_arc(2, 3, 1.0);
    g.add_arc(3, 4, 1.0);
    g.add_arc(3, 5, 1.0);
    g.add_arc(4, 5, 1.0);
    StDag d = validate_st_dag(g, 0, 5);
    SafeSequenceSet set = maximal_safe_sequences(d);
    for (const auto& seq : set.sequences) CHECK(oracle_is_safe(d, seq));
    // node 3 is a cut node, so every sequence passes it
    for (const auto& seq : set.sequences)
        CHECK(std::find(seq.begin(), seq.end(), 3) != seq.end());
}

TEST_CASE("fast, no-tree and oracle variants agree everywhere") {
    auto check_graph = [](const StDag& g) {
        SafeSequenceSet fast = maximal_safe_sequences(g);
        SafeSequenceSet slow = maximal_safe_sequences_no_domtree(g);
        SafeSequenceSet oracle = oracle_maximal_safe(g);
        CHECK(same_sequence_set(fast.sequences, oracle.sequences));
        CHECK(same_sequence_set(slow.sequences, oracle.sequences));
    };
    for_each_st_dag(5, check_graph);
    std::mt19937 rng(31);
    for (int trial = 0; trial < 150; ++trial) check_graph(random_st_dag(rng, 8));
}

TEST_CASE("every reported sequence is safe and maximal") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 80; ++trial) {
        StDag g = random_st_dag(rng, 7);
        SafeSequenceSet set = maximal_safe_sequences(g);
        for (const auto& seq : set.sequences) {
            CHECK(oracle_is_safe(g, seq));
            // no other reported sequence strictly contains it
            for (const auto& other : set.sequences) {
                if (&other == &seq) continue;
                CHECK_FALSE((other.size() > seq.size() && is_subsequence(seq, other)));
            }
        }
    }
}

TEST_CASE("longest sequence per arc on the diamond") {
    StDag d = diamond();
    SafeSequenceSet set = maximal_safe_sequences(d);
    auto per_arc = longest_safe_sequence_per_arc(d, set);
    REQUIRE(per_arc.size() == d.arc_count());
    for (ArcId a = 0; a < d.arc_count(); ++a) {
        CHECK(per_arc[a].length == 3);
        REQUIRE(per_arc[a].seq_index < set.sequences.size());
        // the chosen sequence really walks this arc
        const auto& seq = set.sequences[per_arc[a].seq_index];
        bool adjacent = false;
        for (std::size_t i = 1; i < seq.size(); ++i)
            if (seq[i - 1] == d.arc(a).tail && seq[i] == d.arc(a).head) adjacent = true;
        CHECK(adjacent);
    }
}

TEST_CASE("adjacent sequence nodes do not always force their arc") {
    // ext(v1) walks s,c2 adjacently, yet a detour s->x->c2 exists, so the
    // s->c2 arc is not pinned down by the sequence.
    DiGraph g(6);
    NodeId s = 0, x = 1, c2 = 2, v1 = 3, v2 = 4, t = 5;
    ArcId a_sc2 = g.add_arc(s, c2, 1.0);
    g.add_arc(s, x, 1.0);
    g.add_arc(x, c2, 1.0);
    g.add_arc(c2, v1, 1.0);
    g.add_arc(c2, v2, 1.0);
    g.add_arc(v1, t, 1.0);
    g.add_arc(v2, t, 1.0);
    StDag d = validate_st_dag(g, s, t);

    SafeSequenceSet set = maximal_safe_sequences(d);
    bool found = false;
    for (const auto& seq : set.sequences)
        if (seq == std::vector<NodeId>({s, c2, v1, t})) found = true;
    CHECK(found);

    ArcId out = kNoArc;
    CHECK_FALSE(arc_is_forced(d, s, c2, out));
    CHECK(arc_is_forced(d, c2, v1, out));
    CHECK(d.arc(out).tail == c2);
    CHECK(d.arc(out).head == v1);

    // the detour arc never appears in any per arc attribution
    auto per_arc = longest_safe_sequence_per_arc(d, set);
    CHECK(per_arc[a_sc2].length == 0);
}

TEST_CASE("parallel arcs are never forced") {
    DiGraph g(3);
    g.add_arc(0, 1, 1.0);
    g.add_arc(0, 1, 2.0);
    g.add_arc(1, 2, 1.0);
    StDag d = validate_st_dag(g, 0, 2);
    ArcId out = kNoArc;
    CHECK_FALSE(arc_is_forced(d, 0, 1, out));
    CHECK(arc_is_forced(d, 1, 2, out));
    CHECK(out == 2);
}

TEST_CASE("per arc lengths match a direct recomputation") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 60; ++trial) {
        StDag g = random_st_dag(rng, 7);
        SafeSequenceSet set = maximal_safe_sequences(g);
        auto per_arc = longest_safe_sequence_per_arc(g, set);
        REQUIRE(per_arc.size() == g.arc_count());
        for (ArcId a = 0; a < g.arc_count(); ++a) {
            std::uint32_t best = 0;
            ArcId forced = kNoArc;
            bool pins = arc_is_forced(g, g.arc(a).tail, g.arc(a).head, forced) && forced == a;
            if (pins) {
                for (const auto& seq : set.sequences)
                    for (std::size_t i = 1; i < seq.size(); ++i)
                        if (seq[i - 1] == g.arc(a).tail && seq[i] == g.arc(a).head)
                            best = std::max<std::uint32_t>(best, static_cast<std::uint32_t>(seq.size()));
            }
            CHECK(per_arc[a].length == best);
        }
    }
}
