#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "safeseq/digraph.hpp"

namespace safeseq {

// One "# name / node count / arc lines" block from a .graph file.
// Weight tokens are kept verbatim so that writing a parsed file reproduces it
// byte for byte even when the source uses a formatting we would not emit.
struct GraphRecord {
    std::string name;
    DiGraph graph;
    std::vector<std::string> weight_text; // one entry per arc, may be empty for generated graphs
};

std::vector<GraphRecord> read_graph_file(std::istream& in);
std::vector<GraphRecord> read_graph_file(const std::string& path);

void write_graph_file(std::ostream& out, const std::vector<GraphRecord>& records);
std::string write_graph_file(const std::vector<GraphRecord>& records);

// Shortest decimal form that parses back to the same double ("5", "2.5", ...).
std::string format_weight(double w);

} // namespace safeseq
