#include "safeseq/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "safeseq/error.hpp"

namespace safeseq {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + what,
         static_cast<std::int64_t>(line_no));
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

std::vector<GraphRecord> read_graph_file(std::istream& in) {
    std::vector<GraphRecord> records;
    GraphRecord* cur = nullptr;
    bool expect_count = false;
    std::size_t declared_nodes = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string text = trim(line);
        if (text.empty()) continue;

        if (text[0] == '#') {
            records.emplace_back();
            cur = &records.back();
            cur->name = trim(text.substr(1));
            expect_count = true;
            continue;
        }
        if (cur == nullptr) parse_fail(line_no, "arc data before any '# <name>' header");

        if (expect_count) {
            std::size_t n = 0;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
            if (ec != std::errc() || p != text.data() + text.size())
                parse_fail(line_no, "expected node count, got '" + text + "'");
            declared_nodes = n;
            cur->graph = DiGraph(n);
            expect_count = false;
            continue;
        }

        std::istringstream fields(text);
        std::size_t tail = 0, head = 0;
        std::string weight_token;
        if (!(fields >> tail >> head >> weight_token))
            parse_fail(line_no, "expected 'tail head weight', got '" + text + "'");
        std::string extra;
        if (fields >> extra) parse_fail(line_no, "trailing content '" + extra + "'");
        if (tail >= declared_nodes || head >= declared_nodes)
            parse_fail(line_no, "arc endpoint out of range for " + std::to_string(declared_nodes) + " nodes");
        double w = 0.0;
        try {
            std::size_t used = 0;
            w = std::stod(weight_token, &used);
            if (used != weight_token.size()) throw std::invalid_argument(weight_token);
        } catch (const std::exception&) {
            parse_fail(line_no, "bad weight '" + weight_token + "'");
        }
        if (w < 0.0 || !std::isfinite(w)) parse_fail(line_no, "weight must be finite and nonnegative");
        cur->graph.add_arc(static_cast<NodeId>(tail), static_cast<NodeId>(head), w);
        cur->weight_text.push_back(weight_token);
    }
    if (cur != nullptr && expect_count) parse_fail(line_no, "graph '" + cur->name + "' is missing its node count");
    return records;
}

std::vector<GraphRecord> read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::ParseError, "cannot open '" + path + "'");
    return read_graph_file(in);
}

std::string format_weight(double w) {
    // Integers are the common case in practice; print them without a decimal
    // point so generated files look like the hand-made ones.
    if (w == std::floor(w) && std::abs(w) < 1e15) {
        char buf[32];
        auto [p, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(w));
        (void)ec;
        return std::string(buf, p);
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
    (void)ec;
    return std::string(buf, p);
}

void write_graph_file(std::ostream& out, const std::vector<GraphRecord>& records) {
    for (const GraphRecord& rec : records) {
        out << "# " << rec.name << '\n' << rec.graph.node_count() << '\n';
        for (ArcId a = 0; a < rec.graph.arc_count(); ++a) {
            const Arc& arc = rec.graph.arc(a);
            const bool have_text = a < rec.weight_text.size() && !rec.weight_text[a].empty();
            out << arc.tail << ' ' << arc.head << ' '
                << (have_text ? rec.weight_text[a] : format_weight(arc.weight)) << '\n';
        }
    }
}

std::string write_graph_file(const std::vector<GraphRecord>& records) {
    std::ostringstream out;
    write_graph_file(out, records);
    return out.str();
}

} // namespace safeseq
